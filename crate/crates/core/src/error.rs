use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cyclotomic ring mismatch: conductor {left} vs {right}")]
    RingMismatch { left: u64, right: u64 },

    #[error("value is not a rational integer: {0}")]
    NotRational(String),

    #[error("numerator {numerator} is not divisible by {divisor}")]
    Indivisible { numerator: BigInt, divisor: BigInt },

    #[error("no closed formula for q = {0}")]
    Unsupported(u64),

    #[error("size guard exceeded: {0} (set STEINBERG_GUARD_OVERRIDE=1 to lift)")]
    GuardExceeded(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors that signal an arithmetic bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotRational(_)
                | Error::Indivisible { .. }
                | Error::Inconsistent(_)
                | Error::RingMismatch { .. }
        )
    }
}
