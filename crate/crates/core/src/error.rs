use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank {rank} is not valid for type {kind}")]
    RankOutOfRange { kind: &'static str, rank: usize },

    #[error("({p},{q}) is not a positive root label of B{rank}")]
    InvalidLabel { p: usize, q: usize, rank: usize },

    #[error("column index {i} out of range 1..={rank}")]
    ColumnOutOfRange { i: usize, rank: usize },

    #[error("truncation level {level} outside {lo}..={hi}")]
    TruncationOutOfRange { level: usize, lo: usize, hi: usize },

    #[error("operation requires a root system of type B")]
    NotTypeB,

    #[error("weight has {got} coefficients, root system has rank {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("coordinate {0} is not bounded by any row")]
    Unbounded(String),

    #[error("invalid inequality row {tag}: {reason}")]
    InvalidRow { tag: String, reason: String },

    #[error("integer overflow during {0}")]
    Overflow(&'static str),

    #[error("budget exceeded: {what} would need {needed}, limit is {limit}")]
    BudgetExceeded { what: &'static str, needed: u128, limit: u128 },

    #[error("ambient index sets differ")]
    AmbientMismatch,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
