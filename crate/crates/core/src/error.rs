use thiserror::Error;

/// Errors reported by the solver library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text or rotation data that does not describe a valid map.
    #[error("malformed input{}: {msg}", .line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Malformed { line: Option<usize>, msg: String },

    /// An algorithm was called outside of its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A configured size or width cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A subgraph that cannot be cut along because it is not part of the map.
    #[error("incompatible subgraph: {0}")]
    Incompatible(String),

    /// A vertex walk that is not a simple cycle of the map.
    #[error("not a cycle: {0}")]
    NotACycle(String),

    /// Two coloring profiles whose boundaries do not line up.
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed { line: None, msg: msg.into() }
    }

    pub(crate) fn at_line(line: usize, msg: impl Into<String>) -> Self {
        Error::Malformed { line: Some(line), msg: msg.into() }
    }
}
