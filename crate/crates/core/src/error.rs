use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the learners, the geometry and the CLI plumbing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("sample kind mismatch: {0}")]
    Kind(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("no consistent hypothesis: {0}")]
    Unsatisfiable(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
