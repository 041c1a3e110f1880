use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate document id `{0}`")]
    DuplicateDocument(String),

    #[error("empty document id")]
    EmptyDocumentId,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("identical strings `{0}` have no transformation rule")]
    EmptyRule(String),

    #[error("rule counts sum to zero")]
    EmptyRuleTable,

    #[error("translation candidate set for `{0}` is empty")]
    EmptyCandidateSet(String),

    #[error("empty query{}", .0.as_deref().map(|q| format!(" `{q}`")).unwrap_or_default())]
    EmptyQuery(Option<String>),

    #[error("empty collection")]
    EmptyCollection,

    #[error("snapshot format version {found} is not supported (expected {expected})")]
    SnapshotVersion { found: u32, expected: u32 },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
