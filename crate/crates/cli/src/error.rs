//! Process-level error classification.
//!
//! Exit code 1 means the inputs were wrong (arguments, scenario files,
//! tables, degenerate parameters); exit code 2 means the tool itself failed
//! at runtime (I/O, non-convergence). Success is 0.

use thiserror::Error;

use crate::tables::TableError;
use wdbs_core::simulation::SimulationError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }

    pub fn validation(message: impl std::fmt::Display) -> Self {
        CliError::Validation(message.to_string())
    }

    pub fn runtime(message: impl std::fmt::Display) -> Self {
        CliError::Runtime(message.to_string())
    }
}

impl From<TableError> for CliError {
    fn from(error: TableError) -> Self {
        match error {
            TableError::Io { .. } => CliError::runtime(error),
            _ => CliError::validation(error),
        }
    }
}

impl From<SimulationError> for CliError {
    fn from(error: SimulationError) -> Self {
        match error {
            SimulationError::InvalidConfig(_) => CliError::validation(error),
            other => CliError::runtime(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(error: std::io::Error) -> Self {
        CliError::runtime(error)
    }
}
