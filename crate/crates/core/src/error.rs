use thiserror::Error;

/// Errors raised while building or validating algebraic data.
///
/// Verification failures are not errors: they are reported as data in the
/// various `*Report` structs so that a caller can see every failing identity.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported root system: {0}")]
    UnsupportedType(String),
    #[error("invalid substem: {0}")]
    InvalidSubstem(String),
    #[error("invalid phase: {0}")]
    InvalidPhase(String),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
