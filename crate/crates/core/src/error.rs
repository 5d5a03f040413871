use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter combination that does not describe a valid domain, graph or run.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An object that is not a member of the family it was passed to.
    #[error("invalid object: {0}")]
    Validation(String),

    /// An index outside `[0, size)`.
    #[error("index {index} out of range for domain of size {size}")]
    Range { index: String, size: String },

    /// Two operands disagree on the dimension of the space they live in.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// A domain or register too large to materialise.
    #[error("capacity exceeded: {requested} exceeds limit {limit}")]
    Capacity { requested: String, limit: String },

    /// A search with no marked objects.
    #[error("no marked objects: amplitude amplification has nothing to find")]
    NoSolution,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
