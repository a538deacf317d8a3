use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),

    #[error(transparent)]
    Core(#[from] casimir_core::Error),

    #[error("{failed} of {total} validation checks failed")]
    ValidationFailed { failed: usize, total: usize },
}

impl CliError {
    pub(crate) fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    /// 1 for usage and config problems, 2 for numeric failures, 3 for a
    /// failed validation run.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numeric() => 2,
            CliError::ValidationFailed { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
