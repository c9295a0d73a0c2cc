use std::fmt;

/// Errors produced by the laboratory.
#[derive(Debug)]
pub enum Error {
    /// Two measures with different ambient dimensions were combined.
    DimensionMismatch { left: usize, right: usize },
    /// A measure declared `is_real` has a coefficient pair violating
    /// Hermitian symmetry.
    HermitianViolation { freq: Vec<i64> },
    /// An argument is outside its documented range.
    InvalidParameter(String),
    /// A requested `Δ̂^k` output box would exceed the dense-storage budget.
    BoxTooLarge { entries: u128, limit: u128 },
    /// An oracle table would exceed the brute-force budget.
    OracleBudget { size: u128, limit: u128 },
    /// The operation is only implemented for `d = 1` frequency lattices.
    UnsupportedDim { dim: usize },
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::HermitianViolation { freq } => {
                write!(
                    f,
                    "Hermitian symmetry violated at frequency {freq:?}: \
                     a real measure needs coeff(-c) = conj(coeff(c))"
                )
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::BoxTooLarge { entries, limit } => {
                write!(
                    f,
                    "certified support box needs {entries} dense entries, over the \
                     budget of {limit}; lower k or the bandwidth"
                )
            }
            Error::OracleBudget { size, limit } => {
                write!(
                    f,
                    "oracle table size {size} exceeds the brute-force budget {limit} \
                     (documented ceiling: q <= 17, k <= 3)"
                )
            }
            Error::UnsupportedDim { dim } => {
                write!(f, "operation implemented for d = 1 only, got d = {dim}")
            }
            Error::Io(e) => write!(f, "i/o error: {e}"),
            Error::Json(e) => write!(f, "json error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            Error::Json(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}
