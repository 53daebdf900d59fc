use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, CrrError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrrError {
    #[error("moduli base must contain at least one modulus")]
    EmptyBase,

    #[error("modulus {value} at position {index} is below 2")]
    ModulusTooSmall { index: usize, value: u64 },

    #[error("moduli at positions {i} and {j} share a common factor")]
    NotPairwiseCoprime { i: usize, j: usize },

    #[error("prime index {index} exceeds the configured ceiling {ceiling}")]
    PrimeCeiling { index: usize, ceiling: usize },

    #[error("operands are bound to different moduli bases")]
    BaseMismatch,

    #[error("residue count {got} does not match base length {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("residue {value} at position {index} is not below its modulus {modulus}")]
    ResidueOutOfRange {
        index: usize,
        value: u64,
        modulus: u64,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("extended gcd is undefined for (0, 0)")]
    BothZero,

    #[error("no coprime pair of linear forms after {attempts} attempts")]
    AttemptsExhausted { attempts: u32 },

    #[error("n2 bound must be at least 2, got {0}")]
    BoundTooSmall(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{operand} = {value} does not fit in {n} bits")]
    BitBound {
        operand: &'static str,
        value: BigUint,
        n: u32,
    },

    #[error("bit size n = {0} is below the supported minimum of 4")]
    BitSizeTooSmall(u32),

    #[error("divisor {0} is below 2; the scaler needs y >= 2")]
    ScalerDivisor(BigUint),

    #[error("group A_{index} = {group} does not exceed 2^{bits}")]
    GroupBound {
        index: usize,
        group: BigUint,
        bits: u32,
    },

    #[error("base has {have} moduli but {needed} are required")]
    InsufficientBase { needed: usize, have: usize },
}
