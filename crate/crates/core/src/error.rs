use thiserror::Error;

/// Errors produced by the library. Verification mismatches are not errors;
/// they are reported through [`crate::report::VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {input:?}: {reason}")]
    InvalidPartition { input: String, reason: String },

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("an unbounded box width needs a size cutoff")]
    UnboundedWithoutCutoff,

    #[error("series is not invertible: constant term is zero")]
    NotAUnit,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid group shape: {0}")]
    InvalidShape(String),

    #[error("brute-force oracle refused: homomorphism space has {p}^{exponent} elements, above the 2^24 bound")]
    TooLarge { p: u64, exponent: usize },

    #[error("invalid Durfee witness: {0}")]
    InvalidWitness(String),

    #[error("output failed: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
