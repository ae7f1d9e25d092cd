use thiserror::Error;

/// Errors raised by group construction, module construction and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group size exceeds the configured bound of {bound} elements")]
    Overflow { bound: usize },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("subset is not an upper order ideal of the interval")]
    NotUpperIdeal,
    #[error("subspace is not invariant under the action")]
    NotInvariant,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("search exhausted without a decision: {0}")]
    Undetermined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
