use thiserror::Error;

/// Errors produced by instance handling, solvers and checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("infeasible: {max_flow} edge-disjoint st-paths available, {k} required")]
    Infeasible { max_flow: usize, k: usize },

    #[error("oracle limit exceeded: {0}")]
    OracleTooLarge(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
