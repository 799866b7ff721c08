use alloc::string::String;
use thiserror::Error;

/// Errors surfaced by the lattice toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input")]
    Empty,

    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("vectors are linearly dependent")]
    LinearlyDependent,

    #[error("vector set is not perfect (symmetric rank {rank} < {full})")]
    NotPerfect { rank: usize, full: usize },

    #[error("degenerate support: all differences share the factor {gcd}")]
    DegenerateSupport { gcd: u64 },

    #[error("invalid hole sequence: {0}")]
    InvalidHoles(String),

    #[error("lattice minimum exceeds 4 (no quadruple a+b=c+d on the support)")]
    MinimumExceedsFour,

    #[error("dimension {d} is below the supported minimum {min}")]
    DimensionTooSmall { d: usize, min: usize },

    #[error("dimension {d} exceeds the supported limit {max}")]
    DimensionLimit { d: usize, max: usize },

    #[error("search budget of {0} nodes exhausted; result undecided")]
    BudgetExhausted(u64),

    #[error("not in family: {0}")]
    NotInFamily(String),

    #[error("convex hull is not full-dimensional")]
    DegenerateHull,

    #[error("no value of I_d is available for d = {0}")]
    UnknownId(usize),

    #[error("unsupported root system: {0}")]
    UnsupportedRootType(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;
