//! Batch runner for the simultaneous binary collision laboratory.
//!
//! Each experiment is described by one JSON [`config::ExperimentConfig`]; a
//! run produces CSV tables and a JSON summary, both stamped with
//! [`SCHEMA_VERSION`].

use std::path::PathBuf;

pub mod artifacts;
pub mod config;
pub mod presets;
pub mod run;

/// Version of the config and artifact layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Exit status for a rejected config.
pub const EXIT_CONFIG: i32 = 2;
/// Exit status when no part of the experiment produced a result.
pub const EXIT_FAILED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {message}")]
    Write { path: PathBuf, message: String },
    #[error("experiment failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Io { .. } => EXIT_CONFIG,
            CliError::Write { .. } | CliError::Failed(_) => EXIT_FAILED,
        }
    }
}
