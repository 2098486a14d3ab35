use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("element {element} does not belong to ring {ring}")]
    WrongRing { element: String, ring: String },

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("operation requires a field, got {0}")]
    NotAField(String),

    #[error("invalid color sequence: {0}")]
    InvalidSequence(String),

    #[error("unknown color {0}")]
    UnknownColor(String),

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("interface mismatch: {0}")]
    InterfaceMismatch(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}
