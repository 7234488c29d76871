use thiserror::Error;

use crate::arith::FieldSpec;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    DomainMismatch { left: FieldSpec, right: FieldSpec },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid modulus {0}: must be a prime")]
    InvalidModulus(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid shape: n = {n}, d = {d} (need 1 <= d <= n <= 64)")]
    InvalidShape { n: usize, d: usize },

    #[error("invalid column set: {0}")]
    InvalidColumnSet(String),

    #[error("resource limit exceeded: {what} is {value}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("F has rank {rank}, expected {expected}: the rows are linearly dependent")]
    RankDeficient { rank: usize, expected: usize },

    #[error("no completing vector found after {attempts} attempts")]
    AttemptsExceeded { attempts: usize },

    #[error("determinant vanishes on all {points} points of the sample grid")]
    GridExhausted { points: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
