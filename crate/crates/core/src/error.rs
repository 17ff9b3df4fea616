use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid grid geometry (counts, extents).
    #[error("grid error: {0}")]
    Grid(String),
    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Array lengths inconsistent with the grid.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// An algorithm failed to produce a usable result (divergence,
    /// singular step, non-finite values).
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// Malformed input file; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
