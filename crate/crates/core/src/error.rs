use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid prime {0}: must be at least 2")]
    InvalidPrime(String),
    #[error("{0} is not prime")]
    CompositeModulus(String),
    #[error("zero input where a nonzero value is required: {0}")]
    ZeroInput(&'static str),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(u64, u64),
    #[error("divisor polynomial is not monic")]
    NotMonic,
    #[error("polynomial degree too small: {0}")]
    DegreeTooSmall(&'static str),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("invalid trinomial: {0}")]
    InvalidTrinomial(String),
    #[error("factorization data is not p-regular")]
    NotRegular,
    #[error("polynomial is divisible by phi = {0}, hence reducible")]
    DivisibleByPhi(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
