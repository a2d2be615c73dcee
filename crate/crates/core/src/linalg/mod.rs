//! Exact rational scalars and small dense matrices.
//!
//! Everything here is exact. Determinant and rank use fraction-free
//! (Bareiss) elimination on rows cleared of denominators; singularity is
//! decided by an exact zero test, never by a tolerance.

mod matrix;
mod rational;

pub use matrix::QMatrix;
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}
