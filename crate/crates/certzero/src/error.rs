use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid order: {0}")]
    Order(String),
    #[error("no convergence after {iterations} iterations (last estimate {last})")]
    Convergence { iterations: usize, last: f64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no sign change in [{lo}, {hi}]")]
    BracketNotFound { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
