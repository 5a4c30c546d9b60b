use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or input files; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A numerical kernel failed or a fit did not meet its target; exit code 1.
    #[error("{0}")]
    Numeric(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Numeric(_) | Self::Io { .. } => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}

impl From<ratapprox::Error> for CliError {
    fn from(e: ratapprox::Error) -> Self {
        Self::Numeric(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
