use thiserror::Error;

/// Errors surfaced by the engine, oracles and harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("instance too small: n = {n} admits no phase-1 bucket count for log exponent {p}")]
    InstanceTooSmall { n: usize, p: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("array is incomplete: cell {0} is empty")]
    IncompleteArray(usize),

    #[error("empty input")]
    EmptyInput,

    #[error("quantile boundaries are not strictly increasing at index {index}")]
    NonMonotoneQuantile { index: usize },

    #[error("cell {0} is already occupied")]
    CellOccupied(usize),

    #[error("array is full")]
    ArrayFull,

    #[error("bucket is full")]
    BucketFull,

    #[error("point {index} lies outside the unit cube or has the wrong dimension")]
    PointOutOfDomain { index: usize },

    #[error("exact TSP limited to {max} points, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
