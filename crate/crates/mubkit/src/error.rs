//! Error type shared by every module. Numeric payloads are reported as `f64`
//! regardless of the scalar the computation ran in.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: left operand is {left_rows}x{left_cols}, right operand is {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("data length {len} does not match a {rows}x{cols} matrix")]
    BadDataLength {
        len: usize,
        rows: usize,
        cols: usize,
    },

    #[error("dimension d = {d} is too small; the construction needs d >= 3")]
    DimensionTooSmall { d: usize },

    #[error("{name} is not unitary: max deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotUnitary {
        name: &'static str,
        deviation: f64,
        tolerance: f64,
    },

    #[error("states are not orthonormal: |<{i}|{j}> - delta| = {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotOrthonormal {
        i: usize,
        j: usize,
        deviation: f64,
        tolerance: f64,
    },

    #[error("basis has {got} members but a full basis in 2x{d} needs {expected}")]
    NotFullBasis { d: usize, got: usize, expected: usize },

    #[error("bases live in different spaces: d = {left} vs d = {right}")]
    BasisDimensionMismatch { left: usize, right: usize },

    #[error("unknown example id {0:?}; expected one of ex1, ex2, ex3, ex4")]
    UnknownExample(String),

    #[error("search mode {mode} cannot run at d = {d}: {reason}")]
    InvalidSearchConfig {
        mode: &'static str,
        d: usize,
        reason: &'static str,
    },

    #[error("orthogonal complement construction found {got} vectors, expected {expected}")]
    ComplementConstruction { got: usize, expected: usize },

    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
}
