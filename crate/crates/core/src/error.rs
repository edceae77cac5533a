use thiserror::Error;

use crate::field::Backend;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("backend mismatch: {left} vs {right}")]
    BackendMismatch { left: Backend, right: Backend },
    #[error("operation requires a nonzero element")]
    ZeroInput,
    #[error("unknown field backend `{0}` (expected Q or Q(t))")]
    UnknownBackend(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("size mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    SizeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("column count mismatch: {left} vs {right}")]
    ColumnMismatch { left: usize, right: usize },
    #[error("matrix must have at least one column")]
    NoColumns,
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive semidefinite")]
    NotPsd,
    #[error("matrix is not a row echelon form")]
    NotEchelon,
    #[error("operation is undefined for the zero matrix")]
    ZeroMatrix,
    #[error("matrix is not invertible")]
    Singular,
    #[error("matrix is not bibounded")]
    NotBibounded,
    #[error("bad minor size {k} for a {rows}x{cols} matrix")]
    BadSize { k: usize, rows: usize, cols: usize },
}

pub type Result<T, E = MatrixError> = std::result::Result<T, E>;
