use thiserror::Error;

/// Errors raised by the linear algebra, radius, bound and harness layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {actual}")]
    BadLength {
        rows: usize,
        cols: usize,
        expected: usize,
        actual: usize,
    },

    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyDimension { rows: usize, cols: usize },

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("{bound} expects {expected} operand(s), got {actual}")]
    Arity {
        bound: String,
        expected: String,
        actual: usize,
    },

    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown bound id `{0}`")]
    UnknownBound(String),

    #[error("parse error{}: {message}", location(.key, .line, .column))]
    Parse {
        key: Option<String>,
        message: String,
        line: Option<usize>,
        column: Option<usize>,
    },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

fn location(key: &Option<String>, line: &Option<usize>, column: &Option<usize>) -> String {
    let mut out = String::new();
    if let (Some(l), Some(c)) = (line, column) {
        out.push_str(&format!(" at line {l}, column {c}"));
    }
    if let Some(k) = key {
        out.push_str(&format!(" in `{k}`"));
    }
    out
}

pub type Result<T> = std::result::Result<T, Error>;
