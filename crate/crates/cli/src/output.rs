use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::Format;

/// Files produced by one run, in write order.
pub struct Outputs {
    json: Vec<(String, Vec<u8>)>,
    csv: Vec<(String, Vec<u8>)>,
}

impl Outputs {
    pub fn new() -> Self {
        Outputs { json: Vec::new(), csv: Vec::new() }
    }

    pub fn json(mut self, name: &str, value: &impl Serialize) -> Result<Self> {
        let mut bytes = serde_json::to_vec_pretty(value)?;
        bytes.push(b'\n');
        self.json.push((name.to_string(), bytes));
        Ok(self)
    }

    pub fn csv(mut self, name: &str, text: String) -> Self {
        self.csv.push((name.to_string(), text.into_bytes()));
        self
    }

    /// The files selected by `format`. CSV-only runs of commands without a tabular view
    /// still get their JSON report.
    fn select(self, format: Format) -> Vec<(String, Vec<u8>)> {
        match format {
            Format::Json => self.json,
            Format::Csv if !self.csv.is_empty() => self.csv,
            Format::Csv => self.json,
            Format::Both => self.json.into_iter().chain(self.csv).collect(),
        }
    }
}

#[derive(Serialize)]
struct FileHash {
    name: String,
    sha256: String,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a Value,
    input_hash: String,
    /// Seconds since the Unix epoch; not covered by `output_hash`.
    timestamp: u64,
    output_hash: String,
    files: Vec<FileHash>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Write the selected reports and `manifest.json`; returns the output hash.
pub fn write_run(out: &Path, command: &str, config: &Value, outputs: Outputs, format: Format) -> Result<String> {
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let files = outputs.select(format);
    let mut all = Sha256::new();
    let mut hashes = Vec::new();
    for (name, bytes) in &files {
        let path = out.join(name);
        std::fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
        all.update((name.len() as u64).to_le_bytes());
        all.update(name.as_bytes());
        all.update((bytes.len() as u64).to_le_bytes());
        all.update(bytes);
        hashes.push(FileHash { name: name.clone(), sha256: sha256_hex(bytes) });
    }
    let output_hash = hex::encode(all.finalize());
    let manifest = RunManifest {
        tool: "invset",
        version: env!("CARGO_PKG_VERSION"),
        command,
        config,
        input_hash: sha256_hex(&serde_json::to_vec(config)?),
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        output_hash: output_hash.clone(),
        files: hashes,
    };
    let mut bytes = serde_json::to_vec_pretty(&manifest)?;
    bytes.push(b'\n');
    let path = out.join("manifest.json");
    std::fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(output_hash)
}
