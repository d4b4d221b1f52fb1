//! The `phbound` command line.
//!
//! Every subcommand writes its result to `--out` or standard output and can
//! record a [`RunManifest`] with `--manifest`. Exit codes: 0 on success, 2
//! for invalid arguments, 3 when a resource limit is hit, 4 when the root of
//! the bound equation cannot be bracketed, 1 for anything else.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use phbound::gf2::HomologyContext;
use phbound::percolation::{monte_carlo_rank_difference, run_trials, trials_to_csv};
use phbound::{build_torus, solve_ph, EdgeConfig, EnumerationOptions, TallyTable};
use serde::Serialize;
use thiserror::Error;

mod manifest;

pub use manifest::{FileDigest, RunManifest};

/// Value the end-to-end reproduction is checked against.
pub const REFERENCE_BOUND: f64 = 0.299973;
pub const REFERENCE_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Parser)]
#[command(name = "phbound", version, about = "Percolation threshold bounds for {m,m} tilings")]
pub struct Cli {
    /// Write a JSON run manifest with content hashes of inputs and outputs.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tally rooted animals by (edges, vertices, boundary) as CSV.
    Animals(AnimalsArgs),
    /// Solve for the bound p_h(n) and print it as JSON.
    Bound(BoundArgs),
    /// Homology of edge configurations on a square torus.
    Homology(HomologyArgs),
    /// Monte Carlo estimate of the normalized rank difference on a torus.
    Percolate(PercolateArgs),
    /// Run the m = 5, n = 8 pipeline and compare with the reference bound.
    ReproPaper(ReproArgs),
}

#[derive(Debug, Args)]
pub struct AnimalsArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub max_edges: u32,
    /// Output path; standard output when omitted or `-`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub max_edges: u32,
    /// Tally CSV to solve against instead of enumerating.
    #[arg(long)]
    pub tally: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    /// Side length of the square torus.
    #[arg(long)]
    pub torus: u32,
    /// One character per edge, `1` for open.
    #[arg(long, conflicts_with_all = ["p", "trials", "seed"])]
    pub config: Option<String>,
    #[arg(long, requires_all = ["trials", "seed"])]
    pub p: Option<f64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PercolateArgs {
    #[arg(long)]
    pub torus: u32,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Directory for the tally CSV and bound JSON.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] phbound::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("tally digest {solved} of the solved table differs from {loaded}")]
    DigestMismatch { loaded: String, solved: String },
    #[error("reproduced bound {p_h:.6} is not within {tolerance:e} of {reference}")]
    ReferenceMismatch {
        p_h: f64,
        reference: f64,
        tolerance: f64,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use phbound::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::InvalidArgument(_) | E::Parse(_) | E::Precondition(_)) => 2,
            CliError::Core(E::Resource { .. }) => 3,
            CliError::Core(E::NoSignChange { .. }) => 4,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Collects what a run wrote so the manifest can hash it.
struct Sink<'a> {
    stdout: &'a mut dyn Write,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
}

impl Sink<'_> {
    fn emit(&mut self, path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
        match path {
            Some(p) if p != Path::new("-") => {
                std::fs::write(p, bytes).map_err(|source| CliError::Io {
                    path: p.to_path_buf(),
                    source,
                })?;
                self.outputs.push(FileDigest::of(p.display().to_string(), bytes));
            }
            _ => {
                self.stdout
                    .write_all(bytes)
                    .map_err(|source| CliError::Io {
                        path: PathBuf::from("-"),
                        source,
                    })?;
                self.outputs.push(FileDigest::of("-".into(), bytes));
            }
        }
        Ok(())
    }

    fn read(&mut self, path: &Path) -> CliResult<String> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.inputs
            .push(FileDigest::of(path.display().to_string(), text.as_bytes()));
        Ok(text)
    }
}

/// Parses `args` and runs the command, writing to `stdout` where no output
/// path is given.
pub fn run_from<I, T>(args: I, stdout: &mut dyn Write) -> CliResult<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&args).map_err(|e| CliError::Usage(e.to_string()))?;
    let command_line = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    run(cli, command_line, stdout)
}

pub fn run(cli: Cli, command_line: Vec<String>, stdout: &mut dyn Write) -> CliResult<()> {
    let started = Instant::now();
    let mut sink = Sink {
        stdout,
        inputs: Vec::new(),
        outputs: Vec::new(),
    };
    match &cli.command {
        Command::Animals(a) => animals(a, &mut sink)?,
        Command::Bound(a) => bound(a, &mut sink)?,
        Command::Homology(a) => homology(a, &mut sink)?,
        Command::Percolate(a) => percolate(a, &mut sink)?,
        Command::ReproPaper(a) => repro(a, &mut sink)?,
    }
    if let Some(path) = &cli.manifest {
        let m = RunManifest::new(command_line, started.elapsed(), sink.inputs, sink.outputs);
        std::fs::write(path, m.to_json()).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(())
}

fn enumeration_options(threads: Option<usize>) -> CliResult<EnumerationOptions> {
    if threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    Ok(EnumerationOptions {
        threads,
        ..Default::default()
    })
}

fn animals(a: &AnimalsArgs, sink: &mut Sink<'_>) -> CliResult<()> {
    let opts = enumeration_options(a.threads)?;
    let tally = phbound::animals::enumerate_with(a.m, a.max_edges, &opts)?;
    sink.emit(a.out.as_deref(), tally.to_csv().as_bytes())
}

fn check_tolerance(tol: f64) -> CliResult<()> {
    if tol > 0.0 && tol <= 1e-3 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--tol must lie in (0, 1e-3] (got {tol})")))
    }
}

/// Solves against `tally` and checks the certificate names that same table.
fn certified_bound(tally: &TallyTable, tol: f64) -> CliResult<phbound::BoundResult> {
    let loaded = tally.digest();
    let result = solve_ph(tally, tol)?;
    if result.tally_digest != loaded {
        return Err(CliError::DigestMismatch {
            loaded,
            solved: result.tally_digest,
        });
    }
    Ok(result)
}

fn bound(a: &BoundArgs, sink: &mut Sink<'_>) -> CliResult<()> {
    check_tolerance(a.tol)?;
    let tally = match &a.tally {
        Some(path) => {
            let t = TallyTable::from_csv(&sink.read(path)?)?;
            if t.m() != a.m {
                return Err(CliError::Usage(format!(
                    "tally is for m = {}, not {}",
                    t.m(),
                    a.m
                )));
            }
            if t.max_edges() < a.max_edges {
                return Err(CliError::Usage(format!(
                    "tally stops at {} edges, fewer than --max-edges {}",
                    t.max_edges(),
                    a.max_edges
                )));
            }
            t.truncated(a.max_edges)
        }
        None => phbound::animals::enumerate_with(a.m, a.max_edges, &enumeration_options(a.threads)?)?,
    };
    let result = certified_bound(&tally, a.tol)?;
    let mut json = result.to_json();
    json.push('\n');
    sink.emit(a.out.as_deref(), json.as_bytes())
}

fn torus_side(k: u32) -> CliResult<u32> {
    if k < 3 {
        return Err(CliError::Usage(format!("--torus must be at least 3 (got {k})")));
    }
    Ok(k)
}

fn homology(a: &HomologyArgs, sink: &mut Sink<'_>) -> CliResult<()> {
    let t = build_torus(torus_side(a.torus)?)?;
    let ctx = HomologyContext::new(&t)?;
    if let Some(bits) = &a.config {
        let eps = EdgeConfig::from_bitstring(bits)?;
        if eps.len() != t.edge_count() {
            return Err(CliError::Usage(format!(
                "configuration has {} bits, the torus has {} edges",
                eps.len(),
                t.edge_count()
            )));
        }
        let line = format!(
            "h1_formula={},h1_direct={}\n",
            ctx.formula(&eps)?,
            ctx.direct(&eps)?
        );
        return sink.emit(a.out.as_deref(), line.as_bytes());
    }
    let (Some(p), Some(trials), Some(seed)) = (a.p, a.trials, a.seed) else {
        return Err(CliError::Usage(
            "give either --config or all of --p, --trials and --seed".into(),
        ));
    };
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let records = run_trials(&ctx, p, trials, seed)?;
    sink.emit(a.out.as_deref(), trials_to_csv(&records).as_bytes())
}

fn percolate(a: &PercolateArgs, sink: &mut Sink<'_>) -> CliResult<()> {
    let t = build_torus(torus_side(a.torus)?)?;
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let est = monte_carlo_rank_difference(&t, a.p, a.trials, a.seed)?;
    let mut json = est.to_json();
    json.push('\n');
    sink.emit(a.out.as_deref(), json.as_bytes())
}

#[derive(Debug, Serialize)]
struct ReproReport {
    rows: usize,
    animals: String,
    p_h: f64,
    reference: f64,
    tolerance: f64,
    within_tolerance: bool,
    bound: phbound::BoundResult,
}

fn repro(a: &ReproArgs, sink: &mut Sink<'_>) -> CliResult<()> {
    check_tolerance(a.tol)?;
    let tally = phbound::animals::enumerate_with(5, 8, &enumeration_options(a.threads)?)?;
    let result = certified_bound(&tally, a.tol)?;
    let report = ReproReport {
        rows: tally.len(),
        animals: tally.total().to_string(),
        p_h: result.p_h,
        reference: REFERENCE_BOUND,
        tolerance: REFERENCE_TOLERANCE,
        within_tolerance: (result.p_h - REFERENCE_BOUND).abs() <= REFERENCE_TOLERANCE,
        bound: result,
    };
    if let Some(dir) = &a.out_dir {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
        sink.emit(Some(&dir.join("tally_m5_n8.csv")), tally.to_csv().as_bytes())?;
        let mut json = report.bound.to_json();
        json.push('\n');
        sink.emit(Some(&dir.join("bound_m5_n8.json")), json.as_bytes())?;
    }
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    sink.emit(None, json.as_bytes())?;
    if !report.within_tolerance {
        return Err(CliError::ReferenceMismatch {
            p_h: report.p_h,
            reference: REFERENCE_BOUND,
            tolerance: REFERENCE_TOLERANCE,
        });
    }
    Ok(())
}
