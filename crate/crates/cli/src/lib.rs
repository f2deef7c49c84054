//! Batch driver for the verification suites: reads a TOML run
//! configuration, runs the selected suites and writes `report.csv` and
//! `report.json`.

pub mod cli;
pub mod config;
pub mod presets;
pub mod runner;
pub mod suites;

use thiserror::Error;

pub use config::{RunConfig, Suite};
pub use runner::{run, write_reports, RunOutcome};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

/// Exit status for a finished run.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;
