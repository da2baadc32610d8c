use thiserror::Error;

/// Errors produced by the simulator and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("no unused pilot: {users} users need at least {} pilots, got {pilots}", users + 1)]
    NoUnusedPilot { users: usize, pilots: usize },

    #[error("pilot index {index} out of range for a book of {len} pilots")]
    PilotIndex { index: usize, len: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular combiner: Gram matrix condition number {condition:.3e}")]
    SingularCombiner { condition: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{excluded} of {total} outer draws were degenerate (limit is 0.1%)")]
    ExcessiveExclusions { excluded: usize, total: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
