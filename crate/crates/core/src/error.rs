use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid modulus {0} (must be at least 2)")]
    InvalidModulus(u64),

    #[error("invalid invariant factors {0:?}")]
    InvalidFactors(Vec<u64>),

    #[error("operation requires a homocyclic group (Z/r)^n")]
    NonHomocyclic,

    #[error("enumerating {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u64 },

    #[error("bad torsion model: {0}")]
    BadModel(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
