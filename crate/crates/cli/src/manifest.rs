use std::time::Duration;

use phbound::digest::sha256_hex;
use serde::Serialize;

/// A file read or written by a run, identified by its SHA-256.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileDigest {
    /// Path as given on the command line; `-` is standard output.
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

impl FileDigest {
    pub fn of(path: String, content: &[u8]) -> FileDigest {
        FileDigest {
            path,
            sha256: sha256_hex(content),
            bytes: content.len(),
        }
    }
}

/// Provenance record of one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub version: &'static str,
    pub wall_time_seconds: f64,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

impl RunManifest {
    pub fn new(
        command_line: Vec<String>,
        wall_time: Duration,
        inputs: Vec<FileDigest>,
        outputs: Vec<FileDigest>,
    ) -> RunManifest {
        RunManifest {
            command_line,
            version: env!("CARGO_PKG_VERSION"),
            wall_time_seconds: wall_time.as_secs_f64(),
            inputs,
            outputs,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}
