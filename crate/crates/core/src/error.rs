use thiserror::Error;

/// Errors produced by the planning library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Both robots occupy the same position.
    #[error("collision: {0}")]
    Collision(String),
    /// The input is within the singularity guard of a puncture or of the diagonal.
    #[error("too close to singularity: {0}")]
    Singular(String),
    /// A flat point was expected on the spine but is not.
    #[error("not on spine: {0}")]
    NotOnSpine(String),
    /// A structural precondition between two values does not hold.
    #[error("contract violation: {0}")]
    Contract(String),
    /// An unknown name was requested.
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
