//! Run manifests: every command records its resolved parameters, input
//! hashes, and output hashes so a run can be replayed and checked
//! byte-for-byte.

use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use mfunc::Result;

#[derive(Serialize)]
pub struct FileHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Every parameter after defaulting; replaying with these must
    /// reproduce the outputs bit-identically.
    pub parameters: serde_json::Value,
    pub inputs: Vec<FileHash>,
    pub outputs: Vec<FileHash>,
    pub wall_clock_seconds: f64,
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path)?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(format!("{:x}", hasher.finalize()))
}

fn hash_list(paths: &[PathBuf]) -> Result<Vec<FileHash>> {
    paths
        .iter()
        .map(|p| {
            Ok(FileHash { path: p.display().to_string(), sha256: sha256_file(p)? })
        })
        .collect()
}

pub struct ManifestBuilder {
    command: String,
    parameters: serde_json::Value,
    inputs: Vec<PathBuf>,
    outputs: Vec<PathBuf>,
    started: std::time::Instant,
}

impl ManifestBuilder {
    pub fn new(command: &str, parameters: serde_json::Value) -> Self {
        Self {
            command: command.into(),
            parameters,
            inputs: Vec::new(),
            outputs: Vec::new(),
            started: std::time::Instant::now(),
        }
    }

    pub fn input(&mut self, path: &Path) {
        self.inputs.push(path.to_path_buf());
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.to_path_buf());
    }

    /// Write `<stem>.manifest.json` next to the outputs.
    pub fn write(self, manifest_path: &Path) -> Result<()> {
        let manifest = RunManifest {
            tool: "mfunc".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: self.command,
            parameters: self.parameters,
            inputs: hash_list(&self.inputs)?,
            outputs: hash_list(&self.outputs)?,
            wall_clock_seconds: self.started.elapsed().as_secs_f64(),
        };
        let json = serde_json::to_string_pretty(&manifest)?;
        std::fs::write(manifest_path, json + "\n")?;
        Ok(())
    }
}

/// `foo.csv` -> `foo.manifest.json`; `foo` -> `foo.manifest.json`.
pub fn manifest_path_for(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.manifest.json"))
}
