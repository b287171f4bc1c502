use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("label {label} is outside the ground set 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("invalid transposition ({0} {0})")]
    DegenerateTransposition(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("conflicting costs for pair ({a} {b})")]
    ConflictingCost { a: usize, b: usize },

    #[error("invalid cost {value} for pair ({a} {b})")]
    InvalidCost { a: usize, b: usize, value: f64 },

    /// No finite-cost decomposition exists; the named pair is one that cannot be realized.
    #[error("no finite-cost decomposition: pair ({a} {b}) is unreachable")]
    Infeasible { a: usize, b: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("size {n} exceeds the search limit {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
