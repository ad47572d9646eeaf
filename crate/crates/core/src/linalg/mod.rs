//! Exact scalar and dense-matrix arithmetic.

mod complex;
mod gaussian;
mod matrix;
mod rational;
mod solve;

pub use complex::ComplexRational;
pub use gaussian::GaussianInt;
pub use matrix::{mat_mul, mat_trace, power_trace, ExactMatrix, Matrix, RationalMatrix, Scalar};
pub use rational::{ParseRationalError, Rational};
pub use solve::{rank, solve_rational_system};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {left_rows}x{left_cols} against {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries, got {actual}")]
    BadLength { expected: usize, actual: usize },
    #[error("rank-deficient system: rank {rank} < {size}")]
    RankDeficient { rank: usize, size: usize },
    /// Only raised by the fixed-width fast paths; callers fall back to exact
    /// big-integer arithmetic.
    #[error("fixed-width integer overflow")]
    Overflow,
}
