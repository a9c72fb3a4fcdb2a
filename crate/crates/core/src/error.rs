use thiserror::Error;

/// Errors raised by the library. Negative verdicts (not free, not
/// splittable, ...) are ordinary return values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("matrix is not semisimple")]
    NotSemisimple,
    #[error("not quasi-unipotent: non-cyclotomic factor {0}")]
    NotQuasiUnipotent(String),
    #[error("determinant is not a unit: {0}")]
    NonUnitDeterminant(String),
    #[error("equivariance violated at entry ({row}, {col}): {detail}")]
    Equivariance { row: usize, col: usize, detail: String },
    #[error("fields do not close under bracket: [{0}, {1}]")]
    NotClosed(usize, usize),
    #[error("incompatible charts: {0}")]
    IncompatibleCharts(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
