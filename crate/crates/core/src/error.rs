use thiserror::Error;

/// Errors produced by the algebraic layers of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible variable tables")]
    IncompatibleTables,

    #[error("not Laurent-divisible")]
    NotDivisible,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("non-Laurent substitution")]
    NonLaurentSubstitution,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An internal consistency check failed; this means a theorem the code
    /// relies on was contradicted, or there is a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
