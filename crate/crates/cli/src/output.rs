//! Reports, manifests and CSV tables. The report is a pure function of the
//! inputs, the seed and the result-affecting configuration; everything that
//! may vary between identical runs goes to the manifest.

use std::fs;
use std::path::{Path, PathBuf};

use foliation_core::dynamics::cache::sha256_hex;
use serde::Serialize;

use crate::config::Config;
use crate::error::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputFile {
    pub name: String,
    pub sha256: String,
}

impl InputFile {
    pub fn new(name: impl Into<String>, text: &str) -> Self {
        InputFile {
            name: name.into(),
            sha256: sha256_hex(text.as_bytes()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub file_name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(file_name: &str, header: &[&str]) -> Self {
        Table {
            file_name: file_name.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(|e| CliError::Io(e.to_string()))?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| CliError::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }
}

/// What a subcommand produced.
#[derive(Clone, Debug, Default)]
pub struct CommandOutput {
    pub subcommand: String,
    pub inputs: Vec<InputFile>,
    pub result: serde_json::Value,
    pub tables: Vec<Table>,
    /// Extra deterministic files, written verbatim.
    pub files: Vec<(String, String)>,
    pub summary: Vec<String>,
    /// Run facts that do not belong in the report, such as cache hits.
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct Report<'a> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'a str,
    seed: u64,
    inputs: &'a [InputFile],
    config: serde_json::Value,
    result: &'a serde_json::Value,
}

pub fn render_report(out: &CommandOutput, config: &Config) -> String {
    let report = Report {
        tool: "foliation",
        version: TOOL_VERSION,
        subcommand: &out.subcommand,
        seed: config.seed,
        inputs: &out.inputs,
        config: config.report_snapshot(),
        result: &out.result,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'a str,
    inputs: &'a [InputFile],
    config: &'a Config,
    workers: usize,
    wall_time_seconds: f64,
    report_sha256: String,
    files: Vec<String>,
    notes: &'a [String],
}

/// Write `report.json`, `manifest.json`, tables and extra files into `dir`.
pub fn write_outputs(
    dir: &Path,
    out: &CommandOutput,
    config: &Config,
    wall_time_seconds: f64,
) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let report = render_report(out, config);
    let mut written = Vec::new();
    let mut put = |name: &str, text: &str| -> Result<(), CliError> {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        written.push(path);
        Ok(())
    };
    put("report.json", &report)?;
    let mut names = vec!["report.json".to_string()];
    for t in &out.tables {
        put(&t.file_name, &t.to_csv()?)?;
        names.push(t.file_name.clone());
    }
    for (name, text) in &out.files {
        put(name, text)?;
        names.push(name.clone());
    }
    let manifest = Manifest {
        tool: "foliation",
        version: TOOL_VERSION,
        subcommand: &out.subcommand,
        inputs: &out.inputs,
        config,
        workers: config.workers,
        wall_time_seconds,
        report_sha256: sha256_hex(report.as_bytes()),
        files: names,
        notes: &out.notes,
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    put("manifest.json", &text)?;
    Ok(written)
}

/// Read a file and record its digest.
pub fn read_input(path: &Path) -> Result<(String, InputFile), CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let input = InputFile::new(name, &text);
    Ok((text, input))
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:e}")
}
