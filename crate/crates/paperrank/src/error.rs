use std::path::PathBuf;

use thiserror::Error;

/// Everything that ends a command with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("{path}: {msg}")]
    Format { path: PathBuf, msg: String },
    #[error(transparent)]
    Core(#[from] paperrank_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        CliError::Parse { path: path.into(), line, msg: msg.into() }
    }

    pub fn format(path: impl Into<PathBuf>, msg: impl Into<String>) -> Self {
        CliError::Format { path: path.into(), msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
