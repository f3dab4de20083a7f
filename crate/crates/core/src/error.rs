use thiserror::Error;

use crate::SignedCount;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight sequence is empty")]
    EmptyWeights,

    #[error("weights must be strictly increasing: a[{index}] = {value} does not exceed a[{}] = {previous}", index - 1)]
    NotStrictlyIncreasing {
        index: usize,
        previous: i64,
        value: i64,
    },

    #[error("weights must be nonnegative: a[{index}] = {value}")]
    NegativeWeight { index: usize, value: i64 },

    #[error("denumerant coefficients must be positive, got {value} at position {index}")]
    NonPositiveCoefficient { index: usize, value: u64 },

    #[error("operation needs at least one coefficient")]
    EmptyCoefficients,

    #[error("brute-force search space of about {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    #[error("alternating difference sum is negative ({value}); the counting identity was violated")]
    NegativeResult { value: SignedCount },

    #[error("needs at least 2 weights, got N = {n_weights}")]
    DegenerateN { n_weights: usize },

    #[error("negative exponent t = {t} with a zero node in the weights")]
    ZeroNodeNegativePower { t: i64 },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
}

impl Error {
    /// True for errors that mean a mathematical invariant failed rather than
    /// the input being unacceptable.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::NegativeResult { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
