use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("matrix is not symmetric: |S[{row}][{col}] - S[{col}][{row}]| = {deviation:e}")]
    NotSymmetric {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("matrix is not positive definite: smallest eigenvalue {eigenvalue:e}")]
    NotPositiveDefinite { eigenvalue: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("numerical instability in {context}: residual {residual:e}")]
    NumericalInstability { context: String, residual: f64 },

    #[error("not a quantum state at eta = {eta}: |eta| exceeds the threshold 2*lambda_min = {threshold}")]
    NotQuantum { eta: f64, threshold: f64 },

    #[error("incompatible grids: {0}")]
    GridMismatch(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
