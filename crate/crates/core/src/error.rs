//! Error type shared across the engine.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("x^2 + {p}x + {q} is not expanding")]
    NotExpanding { p: i64, q: i64 },

    #[error("automaton state limit exceeded ({limit} states)")]
    StateLimit { limit: usize },

    #[error("no contractive power of the coefficient matrix within {searched} steps")]
    NoContraction { searched: u32 },

    #[error("theorem hypotheses not satisfied: {}", .0.join("; "))]
    HypothesisViolation(Vec<String>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("reproduction mismatch: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
