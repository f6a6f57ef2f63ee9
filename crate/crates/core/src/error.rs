use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the symbolic and numeric layers.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A matrix that must be inverted over the rational function field is
    /// identically singular.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// A denominator vanishes at the requested point. `row`/`col` are
    /// 1-based; a vector component reports `col == 0`.
    #[error("pole at {at}: entry ({row}, {col}) is undefined")]
    Pole { row: usize, col: usize, at: Complex64 },

    /// A boundary force is unbounded because the frequency is a resonance.
    #[error("resonance at omega^2 = {at}: boundary force is unbounded")]
    Resonance { at: Complex64 },

    /// Symbolic degree exceeded the configured cap.
    #[error("symbolic degree {degree} exceeds cap {cap}")]
    Resource { degree: usize, cap: usize },

    /// A floating-point kernel failed to converge.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Two independent computations that must agree did not.
    #[error("consistency failure: {0}")]
    Consistency(String),

    /// Malformed textual input. `line` and `column` are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Cached results hand out copies of their error; I/O errors keep only kind
/// and message.
impl Clone for Error {
    fn clone(&self) -> Self {
        match self {
            Error::Domain(s) => Error::Domain(s.clone()),
            Error::Singular(s) => Error::Singular(s.clone()),
            Error::Pole { row, col, at } => Error::Pole { row: *row, col: *col, at: *at },
            Error::Resonance { at } => Error::Resonance { at: *at },
            Error::Resource { degree, cap } => Error::Resource { degree: *degree, cap: *cap },
            Error::Numeric(s) => Error::Numeric(s.clone()),
            Error::Consistency(s) => Error::Consistency(s.clone()),
            Error::Parse { line, column, message } => {
                Error::Parse { line: *line, column: *column, message: message.clone() }
            }
            Error::Io(e) => Error::Io(std::io::Error::new(e.kind(), e.to_string())),
        }
    }
}

impl Error {
    /// True for errors caused by the mathematics of the input rather than by
    /// malformed files or I/O.
    pub fn is_math(&self) -> bool {
        !matches!(self, Error::Parse { .. } | Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
