use thiserror::Error;

use crate::model::Violation;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("no priority given for location {0:?}")]
    MissingPriority(String),
    #[error("strategy does not fit the game: {0}")]
    StrategyMismatch(String),
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        limit: u64,
        needed: u64,
    },
    #[error("dependency is not good: {0}")]
    NotGood(String),
    #[error("invalid automaton: {0}")]
    Automaton(String),
    #[error("layered solve not applicable: {0}")]
    NotLayerable(String),
    #[error("{message} at line {line}, column {column}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed document: {0}")]
    Format(String),
    /// A mathematical invariant failed; this always indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
