use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must have degree at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("constant coefficient is zero; strip powers of x first")]
    ZeroConstantTerm,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("gcd({lambda}, {mu}) != 1")]
    NotCoprime { lambda: i64, mu: u64 },
    #[error("alpha = {0} is a negative integer")]
    NegativeIntegerAlpha(i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("prime {p} is bad for this polynomial: {reason}")]
    BadPrime { p: u64, reason: &'static str },
    #[error("no frobenius samples given")]
    NoSamples,
    #[error("shift list is empty")]
    EmptyShifts,
    #[error("could not factor {0} within the iteration budget")]
    FactorizationBudget(String),
    #[error("prime factor {0} does not fit in 64 bits")]
    PrimeTooLarge(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
