use thiserror::Error;

/// Errors raised by the numeric routines and the state-file reader.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M^H| = {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },
    #[error("eigensolver did not converge after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("expectation value has imaginary part {imag:e}")]
    NonRealExpectation { imag: f64 },
    #[error("operator is not a rank-one projector: {reason}")]
    NotProjector { reason: String },
    #[error("parameter vector has length {found}, expected {expected}")]
    BadParamLength { expected: usize, found: usize },
    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("bad probability vector: {0}")]
    BadProbabilities(String),
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid options: {0}")]
    InvalidOptions(String),
    #[error("skew information {value:e} is negative beyond roundoff")]
    NegativeSkew { value: f64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
