use std::path::PathBuf;

use thiserror::Error;

/// CLI-level failures, split by exit code: usage/parse problems exit 2,
/// domain outcomes (search failures, core errors, false verdicts) exit 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("{path}: {msg}")]
    Validation { path: PathBuf, msg: String },
    #[error("render error: {0}")]
    Render(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Domain(#[from] tileforge_core::Error),
    #[error("{0}")]
    NotFound(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. }
            | CliError::Validation { .. }
            | CliError::Render(_)
            | CliError::Usage(_)
            | CliError::Io { .. } => 2,
            CliError::Domain(_) | CliError::NotFound(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
