use crate::arith::{MAX_FACTOR_INPUT, MAX_MODULUS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("modulus {0} exceeds the supported bound {MAX_MODULUS}")]
    ModulusOutOfRange(i64),
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),
    #[error("|m| must be at least {min}, got {m}")]
    ModulusTooSmall { m: i64, min: i64 },
    #[error("cannot factorize zero")]
    FactorizeZero,
    #[error("{0} exceeds the factorization bound {MAX_FACTOR_INPUT}")]
    FactorBoundExceeded(i64),
    #[error("gcd(0, 0) has no Bezout representation")]
    BothZero,
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("sign must be -1 or +1, got {0}")]
    InvalidSign(i64),
    #[error("exponents must be positive")]
    NonPositiveExponent,
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("{p} does not divide {m}")]
    NotADivisor { p: i64, m: i64 },
    #[error("{value} is too large for brute-force enumeration (limit {limit})")]
    OracleLimit { value: i64, limit: i64 },
    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("invalid range `{0}`")]
    InvalidRange(String),
    #[error("empty parameter range: {0}")]
    EmptyRange(String),
    #[error("theorem {theorem} does not take parameter `{param}`")]
    UnusedParameter {
        theorem: String,
        param: &'static str,
    },
    #[error("theorem {theorem} requires parameter `{param}`")]
    MissingParameter {
        theorem: String,
        param: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
