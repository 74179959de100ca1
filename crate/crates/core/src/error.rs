use thiserror::Error;

/// Errors produced by the combinatorics engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain/codomain mismatch: expected a set of size {expected}, found {found}")]
    Mismatch { expected: usize, found: usize },

    #[error("map value {value} at index {index} is outside the codomain of size {cod}")]
    OutOfRange { index: usize, value: usize, cod: usize },

    #[error("map is not surjective: codomain element {0} has empty preimage")]
    NotSurjective(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{what} = {got} exceeds the configured limit {limit}")]
    BoundExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("inner series must have zero constant term")]
    NonzeroConstantTerm,

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Mismatch { .. } => "mismatch",
            Error::OutOfRange { .. } => "out-of-range",
            Error::NotSurjective(_) => "not-surjective",
            Error::InvalidPartition(_) => "invalid-partition",
            Error::BoundExceeded { .. } => "bound-exceeded",
            Error::Parse { .. } => "parse",
            Error::NonzeroConstantTerm => "nonzero-constant-term",
            Error::InvalidSimplex(_) => "invalid-simplex",
            Error::Precondition(_) => "precondition",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_bound(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        Err(Error::BoundExceeded { what, limit, got })
    } else {
        Ok(())
    }
}
