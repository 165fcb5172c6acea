use thiserror::Error;

/// Errors surfaced by the library. Parse errors carry the 1-based input line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown variable {0}")]
    UnknownVariable(u32),

    #[error("assignment does not cover variable {0}")]
    PartialAssignment(u32),

    #[error("instance has {n} variables, limit is {limit}")]
    TooManyVariables { n: usize, limit: usize },

    #[error("search exceeded the node cap of {0}")]
    NodeCapExceeded(u64),

    #[error("reduction did not reach a fixpoint within {0} rule scans")]
    ReductionDiverged(u64),

    #[error("no branching priority applies: {0}")]
    NoPriorityApplies(String),

    #[error("invalid branching vector: {0}")]
    InvalidBranchingVector(String),

    #[error("no branching vector registered for priority {priority} subcase {subcase}")]
    UnknownPriority { priority: u8, subcase: String },

    #[error("trace does not fit the formula it is replayed on: {0}")]
    TraceMismatch(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
