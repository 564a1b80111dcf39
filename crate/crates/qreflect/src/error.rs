//! Crate-wide error taxonomy.
//!
//! Verification failures are *results* (reported per check), not errors; the
//! variants here are genuine computation failures: bad inputs, singular
//! matrices where an inverse is required, missing rewrite rules, and resource
//! guards. The CLI maps `StepLimitExceeded`, `DegreeOverflow` and
//! `SamplerExhausted` to the resource-abort exit code.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero scalar")]
    DivisionByZero,

    #[error("denominator vanishes at the evaluation point: {0}")]
    PoleAtPoint(String),

    #[error("variable `{0}` has no assignment at the evaluation point")]
    UnboundVariable(String),

    #[error("intermediate expression exceeded the degree guard (total degree {degree} > limit {limit})")]
    DegreeOverflow { degree: i64, limit: i64 },

    #[error("tensor-leg mismatch: {0}")]
    LegMismatch(String),

    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    #[error("singular coefficient matrix while deriving an exchange rule: {0}")]
    SingularCoefficientMatrix(String),

    #[error("normal ordering exceeded the step limit ({0} rewrites)")]
    StepLimitExceeded(u64),

    #[error("no exchange rule for adjacent pair {0}")]
    MissingRule(String),

    #[error("normal forms disagree between reduction strategies; witness word: {0}")]
    NonConfluent(String),

    #[error("realization does not cover generator family {0}")]
    MissingRealization(String),

    #[error("sampler could not find an admissible point after {0} attempts")]
    SamplerExhausted(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
