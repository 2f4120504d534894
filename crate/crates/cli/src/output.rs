//! CSV and manifest emission. Numeric CSV fields use a fixed 9
//! significant digits in scientific notation, so reruns with identical
//! inputs are byte-identical and locale-independent.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

/// 9 significant digits, scientific, locale-free.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000e0".into();
    }
    format!("{x:.8e}")
}

pub struct CsvWriter {
    path: PathBuf,
    lines: Vec<String>,
}

impl CsvWriter {
    pub fn new(path: PathBuf, header: &[&str]) -> Self {
        CsvWriter {
            path,
            lines: vec![header.join(",")],
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.lines.push(fields.join(","));
    }

    pub fn finish(self) -> Result<PathBuf, CliError> {
        let mut file = std::fs::File::create(&self.path)
            .map_err(|e| CliError::io(format!("cannot create {}: {e}", self.path.display())))?;
        for line in &self.lines {
            writeln!(file, "{line}")
                .map_err(|e| CliError::io(format!("write {}: {e}", self.path.display())))?;
        }
        Ok(self.path)
    }
}

/// Sidecar describing how a data file was produced.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_digest: String,
    pub seed: u64,
    pub tool_version: String,
    pub wall_time_seconds: f64,
}

pub struct ManifestBuilder {
    command: String,
    digest: String,
    seed: u64,
    started: Instant,
}

impl ManifestBuilder {
    pub fn start(command: String, canonical_config: &str, seed: u64) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(canonical_config.as_bytes());
        let digest = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect::<String>();
        ManifestBuilder {
            command,
            digest,
            seed,
            started: Instant::now(),
        }
    }

    /// Write `<data_file>.manifest.json` next to the data file.
    pub fn write_for(&self, data_file: &Path) -> Result<(), CliError> {
        let manifest = RunManifest {
            command: self.command.clone(),
            config_digest: self.digest.clone(),
            seed: self.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
        };
        let mut path = data_file.as_os_str().to_owned();
        path.push(".manifest.json");
        let path = PathBuf::from(path);
        let text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| CliError::io(format!("manifest serialization: {e}")))?;
        std::fs::write(&path, text)
            .map_err(|e| CliError::io(format!("write {}: {e}", path.display())))
    }
}
