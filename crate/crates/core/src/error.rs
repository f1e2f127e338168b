use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring or field description: {0}")]
    InvalidSpec(String),

    #[error("modulus {0:?} is reducible modulo the characteristic")]
    ReducibleModulus(Vec<u64>),

    #[error("size bound exceeded: {what} has {size} elements, limit is {limit}")]
    SizeExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("enumeration cap exceeded: {what} needs {needed} items, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("element is not a unit (valuation {0})")]
    NotUnit(u32),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
