use std::process::ExitCode;

use clap::Parser;
use phbound_cli::Cli;

fn main() -> ExitCode {
    let command_line: Vec<String> = std::env::args().collect();
    // clap exits 0 for --help/--version and 2 for usage errors
    let cli = Cli::try_parse_from(&command_line).unwrap_or_else(|e| e.exit());
    match phbound_cli::run(cli, command_line, &mut std::io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("phbound: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
