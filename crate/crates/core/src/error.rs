//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a complex: {0}")]
    NotAComplex(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("missing stratum {0}")]
    MissingStratum(String),

    #[error("missing restriction matrix for level {level}, degree {degree}")]
    MissingRestriction { level: usize, degree: i64 },

    #[error("sign rule violation: {0}")]
    SignRuleViolation(String),

    #[error("substitution would invert a non-monomial image of variable {variable}")]
    NonMonomialNegativePower { variable: char },

    #[error("perverse rule totals disagree with the weight table at cell {0}")]
    MarginalMismatch(String),

    #[error("image dimensions not monotone at {0}")]
    NonMonotone(String),

    #[error("variant mismatch: {0}")]
    VariantMismatch(String),

    #[error("hypothesis failed on witness {witness} at cell (s={s}, p={p}, w={w})")]
    HypothesisFailed {
        witness: String,
        s: i64,
        p: i64,
        w: i64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },
}

impl Error {
    pub fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
