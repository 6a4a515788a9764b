use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An image is not square, not a power-of-two side, or otherwise unusable.
    #[error("invalid image: {0}")]
    InvalidImage(String),

    /// The requested register exceeds the simulator's qubit cap.
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    /// A search was requested but nothing satisfies the predicate.
    #[error("no marked items: {0}")]
    NoMarkedItems(String),

    /// A state does not have exactly one intensity branch per position.
    #[error("not an NEQR state: {0}")]
    NotAnNeqrState(String),

    /// Malformed input text or bytes.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
