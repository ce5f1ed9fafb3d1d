use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("contradiction at vertex ({x}, {y}): {reason}")]
    Contradiction { x: usize, y: usize, reason: String },
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("active region is malformed: {0}")]
    Structure(String),
    #[error("not a perfect matching: {0}")]
    NotAMatching(String),
    #[error("plane partition box {got:?} does not match geometry box {expected:?}")]
    IncompatibleBox {
        got: (usize, usize, usize),
        expected: (usize, usize, usize),
    },
    #[error("invalid plane partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
