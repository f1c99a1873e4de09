use std::path::PathBuf;

use precedent_core::ValidationReport;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("syntax error: {0}")]
    Syntax(serde_json::Error),
    #[error("invalid document: {0}")]
    Invalid(ValidationReport),
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] precedent_core::Error),
}

impl Error {
    /// Process exit status: 1 for documents that are malformed or fail
    /// validation, 2 for
    /// everything else (usage, IO, unknown names, model mismatch, caps).
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Invalid(_) | Error::Syntax(_) => 1,
            Error::Core(precedent_core::Error::InvalidHierarchy(_)) => 1,
            _ => 2,
        }
    }
}
