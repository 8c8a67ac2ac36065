use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside an operation's stated domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An instance exceeded a configured resource cap (solver size, memory budget).
    #[error("resource limit: {0}")]
    Resource(String),

    /// A numeric routine failed to converge or produced nonsense.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Malformed family text, with the offending 1-based line number.
    #[error("parse error, line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
