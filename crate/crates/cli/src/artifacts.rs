//! CSV tables and the JSON summary of a run.
//!
//! Tables are fully assembled and sorted before anything is written, and all
//! files are written from one thread.

use std::fs;
use std::path::{Path, PathBuf};

use crate::{CliError, SCHEMA_VERSION};

/// Shortest round-trip representation, so equal values always print equally.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Appended to the run name; empty for the main table.
    pub suffix: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(suffix: &str, header: &[&str]) -> Self {
        Table { suffix: suffix.into(), header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn file_name(&self, name: &str) -> String {
        if self.suffix.is_empty() {
            format!("{name}.csv")
        } else {
            format!("{name}_{}.csv", self.suffix)
        }
    }

    /// The CSV text, preceded by a `# schema_version=N` comment line.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let body = String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8");
        Ok(format!("# schema_version={SCHEMA_VERSION}\n{body}"))
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Write { path: path.to_path_buf(), message: e.to_string() })
}

/// Writes every table and the summary into `dir`; returns the written paths.
pub fn write_all(
    dir: &Path,
    name: &str,
    tables: &[Table],
    summary: &serde_json::Value,
) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Write { path: dir.to_path_buf(), message: e.to_string() })?;
    let mut written = Vec::new();
    for t in tables {
        let path = dir.join(t.file_name(name));
        let text = t.to_csv().map_err(|e| CliError::Write { path: path.clone(), message: e.to_string() })?;
        write(&path, &text)?;
        written.push(path);
    }
    let path = dir.join(format!("{name}.summary.json"));
    let text = serde_json::to_string_pretty(summary).expect("summary serialises");
    write(&path, &(text + "\n"))?;
    written.push(path);
    Ok(written)
}
