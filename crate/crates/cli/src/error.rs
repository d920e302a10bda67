use std::path::PathBuf;

use thiserror::Error;

/// Everything a command can fail with, mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Core(#[from] qgame_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed file: {message}")]
    Malformed { path: PathBuf, message: String },
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn domain(message: impl Into<String>) -> Self {
        CliError::Domain(message.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn malformed(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Malformed {
            path: path.into(),
            message: message.to_string(),
        }
    }

    /// 1 for domain errors, 2 for I/O and unreadable input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Core(_) => 1,
            CliError::Io { .. } | CliError::Malformed { .. } | CliError::Csv(_) => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
