//! Error type and exit-code mapping.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure in {op}: {source}")]
    Numerical { op: &'static str, source: smx_core::Error },
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for configuration and i/o problems, 2 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) | Self::Io(_) => 1,
            Self::Numerical { .. } | Self::CheckFailed(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Tags a core error with the operation that produced it.
pub trait NamedOp<T> {
    fn op(self, op: &'static str) -> CliResult<T>;
}

impl<T> NamedOp<T> for smx_core::Result<T> {
    fn op(self, op: &'static str) -> CliResult<T> {
        self.map_err(|source| CliError::Numerical { op, source })
    }
}
