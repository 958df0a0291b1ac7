use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation requested at (or numerically indistinguishable from) a pole.
    #[error("pole: {0}")]
    Pole(String),
    /// An iterative scheme has no convergence guarantee for these inputs.
    #[error("no convergence guarantee: {0}")]
    NoConvergence(String),
    /// Malformed external data (CSV/JSON inputs).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
