use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("matrix side must be even, got {0}")]
    OddSide(usize),

    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("exhaustive check infeasible: {evals} evaluations exceed the limit {limit}")]
    Infeasible { evals: u128, limit: u128 },

    #[error("weight {0:?} is not dominant for D_n")]
    NotDominant(Vec<i64>),

    #[error("linear system inconsistent at equation {row}")]
    Inconsistent { row: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
