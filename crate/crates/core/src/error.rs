use thiserror::Error;

/// Every failure the toolkit can report.
///
/// The variants are grouped so that the command line front end can map them
/// onto exit categories: parse problems, violated preconditions, and failed
/// verifications.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot compose: {0}")]
    Composition(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("resolution defect: {0}")]
    ResolutionDefect(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed json: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self { Error::Domain(msg.into()) }

    pub(crate) fn contract(msg: impl Into<String>) -> Self { Error::Contract(msg.into()) }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self { Error::Precondition(msg.into()) }

    pub(crate) fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse { position, message: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self { Error::Io(e.to_string()) }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self { Error::Json(e.to_string()) }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with a dimension error unless both ambient variable counts agree.
pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
