use thiserror::Error;

/// Errors produced by the library.
///
/// Every variant describes bad input or an unsatisfiable request; none of
/// them indicate an internal bug.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field size {0} is not prime")]
    NotPrime(u32),
    #[error("field size {0} is a prime power; only prime fields are supported")]
    ExtensionField(u32),
    #[error("field size {0} is outside the supported range 2..=251")]
    FieldOutOfRange(u32),
    #[error("matrix dimensions {rows}x{cols} are invalid: {reason}")]
    BadDimensions {
        rows: usize,
        cols: usize,
        reason: &'static str,
    },
    #[error("entry {value} is not an element of GF({p})")]
    BadEntry { value: u32, p: u32 },
    #[error("generator matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("code has {count} codewords, over the enumeration cap of {cap}")]
    EnumerationCap { count: u128, cap: u64 },
    #[error("vector is not a codeword (non-zero syndrome)")]
    NotACodeword,
    #[error("invalid reference codewords: {0}")]
    InvalidReference(String),
    #[error("coefficient overflow in counting polynomial")]
    CoefficientOverflow,
    #[error("variable {0} is not active in this polynomial")]
    InactiveVariable(char),
    #[error("operation requires a binary code, got GF({0})")]
    NonBinary(u32),
    #[error("distance configuration is not realizable: {0}")]
    NonRealizable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("geometric consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
