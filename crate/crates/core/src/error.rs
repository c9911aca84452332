use thiserror::Error;

/// Failures reported by the geometric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("points are not causally related")]
    NotCausal,
    #[error("point is not in the chronological future")]
    NotChronological,
    #[error("no causal curve realises the requested endpoint and area")]
    NoSolution,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
