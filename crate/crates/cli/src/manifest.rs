use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub const FORMAT_VERSION: u32 = 1;

/// Everything needed to re-run a command and locate its outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub format_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub subcommand: &'static str,
    pub parameters: Value,
    pub master_seed: Option<u64>,
    pub outputs: Vec<PathBuf>,
    pub wall_clock_seconds: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub extra: Value,
}

pub struct ManifestBuilder {
    subcommand: &'static str,
    parameters: Value,
    master_seed: Option<u64>,
    started: Instant,
    warnings: Vec<String>,
    extra: Value,
}

impl ManifestBuilder {
    pub fn new(subcommand: &'static str, parameters: Value, master_seed: Option<u64>) -> Self {
        Self {
            subcommand,
            parameters,
            master_seed,
            started: Instant::now(),
            warnings: Vec::new(),
            extra: Value::Null,
        }
    }

    pub fn warn(&mut self, warning: String) {
        eprintln!("aqft: warning: {warning}");
        self.warnings.push(warning);
    }

    pub fn extra(&mut self, extra: Value) {
        self.extra = extra;
    }

    pub fn finish(self, outputs: Vec<PathBuf>) -> RunManifest {
        RunManifest {
            format_version: FORMAT_VERSION,
            tool: env!("CARGO_PKG_NAME"),
            tool_version: env!("CARGO_PKG_VERSION"),
            subcommand: self.subcommand,
            parameters: self.parameters,
            master_seed: self.master_seed,
            outputs,
            wall_clock_seconds: self.started.elapsed().as_secs_f64(),
            warnings: self.warnings,
            extra: self.extra,
        }
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}
