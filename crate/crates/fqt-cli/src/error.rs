//! CLI-level errors and their mapping onto process exit codes.

use crate::formats::FormatError;
use std::path::PathBuf;

/// Anything a subcommand can fail with.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// A file could not be read.
    #[error("cannot read {path}: {source}")]
    Read {
        /// Offending path.
        path: PathBuf,
        /// Underlying IO error.
        source: std::io::Error,
    },
    /// A file could not be written.
    #[error("cannot write {path}: {source}")]
    Write {
        /// Offending path.
        path: PathBuf,
        /// Underlying IO error.
        source: std::io::Error,
    },
    /// Input did not parse or failed validation on load.
    #[error(transparent)]
    Format(#[from] FormatError),
    /// Arguments were inconsistent in a way clap cannot express.
    #[error("{0}")]
    Usage(String),
    /// `validate` found rule violations (they are listed on stdout).
    #[error("{0} validation violation(s) found")]
    Violations(usize),
    /// The numerical stage rejected an otherwise well-formed dataset.
    #[error(transparent)]
    Fit(fqt_core::Error),
}

impl CliError {
    /// Exit code contract: 2 for fitting failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Fit(_) => 2,
            _ => 1,
        }
    }
}
