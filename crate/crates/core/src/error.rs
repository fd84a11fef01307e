use crate::wigner::HalfInt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: String, found: String },

    #[error("no basis element {label} at spin {spin}")]
    Lookup { label: String, spin: HalfInt },

    #[error("unsupported spin {spin}: {reason}")]
    UnsupportedSpin { spin: HalfInt, reason: &'static str },

    #[error("spin mismatch: tables built for {tables}, state has {state}")]
    SpinMismatch { tables: HalfInt, state: HalfInt },

    #[error("non-finite state at step {step} (t = {time})")]
    NonFinite { step: usize, time: f64 },

    /// An internal consistency check failed (e.g. a trace that should be
    /// real has an imaginary part).
    #[error("numerical inconsistency: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn dimension(expected: impl ToString, found: impl ToString) -> Self {
        Error::Dimension {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
