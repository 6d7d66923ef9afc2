use std::path::PathBuf;

use crate::lab::ExperimentReport;

/// Every failure the library can report.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: String, limit: u128 },

    #[error("value out of range: {0}")]
    Overflow(String),

    #[error("incomplete factorization of {value}: cofactor {remaining} left unresolved")]
    IncompleteFactorization { value: u128, remaining: u128 },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config error in {}: {message}", path.display())]
    Config { path: PathBuf, message: String },

    /// A scan stopped early; the report covers the completed prefix of the range.
    #[error("scan stopped at {} of {}: {reason}", report.completed_upto, report.config.limit)]
    Partial {
        report: Box<ExperimentReport>,
        reason: String,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn overflow(msg: impl Into<String>) -> Self {
        Error::Overflow(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
