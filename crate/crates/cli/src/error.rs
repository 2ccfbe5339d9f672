use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, a malformed config, or parameters outside a model's domain.
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },

    #[error("invalid config {path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },

    #[error(transparent)]
    Core(#[from] refcopula::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use refcopula::Error as E;
        match self {
            Self::Usage(_) | Self::Read { .. } | Self::Parse { .. } => 2,
            Self::Core(E::Domain(_) | E::InfiniteQuantile(_) | E::Range { .. }) => 3,
            Self::Core(E::Numerical { .. }) => 4,
            Self::Write { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Treats a core domain error as bad input; other failures pass through.
pub fn usage<T>(r: refcopula::Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        refcopula::Error::Domain(msg) => CliError::Usage(msg),
        other => CliError::Core(other),
    })
}
