use thiserror::Error;

use crate::lp::LpError;

#[derive(Debug, Error)]
pub enum DepthError {
    #[error("point {index} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, DepthError>;
