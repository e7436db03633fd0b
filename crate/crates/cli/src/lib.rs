//! Command-line front end: dataset handling, command dispatch, and JSON reports.

pub mod dataset;
pub mod report;
pub mod run;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at row {row}, column {col}: {message}")]
    Parse { row: usize, col: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] halfspace_core::Error),
}

impl CliError {
    /// 2 for bad input or usage, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        use halfspace_core::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(E::Parse(_) | E::DimensionMismatch { .. } | E::EmptySample) => 2,
            CliError::Core(_) => 1,
        }
    }
}
