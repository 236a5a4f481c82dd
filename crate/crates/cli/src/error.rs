use std::io;
use std::path::PathBuf;

use invlim_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{}:{line}:{column}: {reason}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        reason: String,
    },

    #[error("{}: {source}", path.display())]
    Invalid { path: PathBuf, source: CoreError },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Stable numeric code; library errors keep their own codes.
    pub fn code(&self) -> u16 {
        match self {
            CliError::Io { .. } => 60,
            CliError::Parse { .. } => 12,
            CliError::Invalid { source, .. } | CliError::Core(source) => source.code(),
            CliError::Usage(_) => 51,
        }
    }
}
