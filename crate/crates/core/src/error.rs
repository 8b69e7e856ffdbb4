use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// Two loops come closer than the contact tolerance, so their linking
    /// number is not defined.
    #[error("loops too close: minimum distance {distance:e} below tolerance {tolerance:e}")]
    LoopsTooClose { distance: f64, tolerance: f64 },

    #[error("Gauss sum {raw} is not within {tolerance:e} of an integer")]
    NonIntegralLinking { raw: f64, tolerance: f64 },

    #[error("projection direction is degenerate: {0}")]
    DegenerateDirection(String),

    #[error("loop is not in general position with respect to the disk: {0}")]
    NonGenericPosition(String),

    #[error("level {level} has {count} components, exceeding the budget of {budget}")]
    BudgetExceeded { level: usize, count: u128, budget: u128 },

    #[error("address letter {letter} outside 1..={m}")]
    AddressOutOfRange { letter: usize, m: usize },

    #[error("unsupported scene version header {0:?}")]
    UnsupportedVersion(String),

    #[error("{path}:{line}: {message}")]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
