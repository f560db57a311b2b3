//! Command-line failures and their exit codes.

use qortho::QError;
use thiserror::Error;

/// Failures surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inadmissible arguments (exit code 1).
    #[error("usage error: {0}")]
    Usage(String),
    /// A numerical routine failed (exit code 2).
    #[error("numerical failure: {0}")]
    Numerical(#[from] QError),
    /// Output could not be written (exit code 2).
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) | CliError::Io(_) => 2,
        }
    }
}

/// Exit code of a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code when a verification threshold is breached.
pub const EXIT_VERIFY: i32 = 3;
