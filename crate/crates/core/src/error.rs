use thiserror::Error;

/// Errors raised while constructing or relating finite algebraic structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid order {0}: cyclic factors need order at least 2")]
    InvalidOrder(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("invalid Morita context: {0}")]
    InvalidContext(String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("{0} is not idempotent")]
    NotIdempotent(String),
    #[error("idempotent {0} is trivial, nothing to decompose")]
    TrivialIdempotent(String),
    #[error("carrier of size {size} exceeds the search bound {bound}")]
    SearchBoundExceeded { size: usize, bound: usize },
    #[error("wiring mismatch: {0}")]
    Wiring(String),
    #[error("not an isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error("invalid six-tuple: {0}")]
    InvalidTuple(String),
    #[error("element out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
