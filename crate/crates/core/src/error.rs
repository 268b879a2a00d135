use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{0} is not a power of an odd prime")]
    NotPrimePower(u64),
    #[error("characteristic {0} is even; only odd characteristic is supported")]
    EvenCharacteristic(u64),
    #[error("degree {e} out of range for p = {p} (need e >= 1 and p^e <= {max})")]
    DegreeOutOfRange { p: u64, e: u32, max: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element encoding {enc} out of range for GF({q})")]
    ElementOutOfRange { enc: u64, q: u64 },
    #[error("expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("rank {rank} with type {ty} is not a valid stratum for m = {m}")]
    InvalidRankTypePair { rank: usize, ty: i8, m: usize },
    #[error("predicted cost {predicted} exceeds guard {limit} (use --force or SYMDET_GUARD_OPS)")]
    GuardExceeded { predicted: u128, limit: u128 },
    #[error("parameter out of range: {0}")]
    RangeError(String),
    #[error("inexact division in {0}")]
    InexactDivision(String),
    #[error("negative count in {0}")]
    NegativeCount(String),
    #[error("cross-check mismatch in {context}: {left} != {right}")]
    CrossCheckMismatch {
        context: String,
        left: String,
        right: String,
    },
    #[error("trace values are not uniform off zero: {0}")]
    UniformityViolation(String),
    #[error("weights differ inside stratum {0}")]
    StratumWeightViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}
