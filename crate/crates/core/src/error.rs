use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-physical parameter `{field}` = {value}: {reason}")]
    NonPhysicalParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{method} did not converge: {detail}")]
    ConvergenceFailure {
        method: &'static str,
        detail: String,
    },

    #[error("dimension mismatch: expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("argument {value} outside the valid domain {domain}")]
    DomainError { value: f64, domain: &'static str },

    #[error("grid of {n_points} points too coarse: {detail}")]
    GridTooCoarse { n_points: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn non_physical(field: &'static str, value: f64, reason: &'static str) -> Self {
        Error::NonPhysicalParameter {
            field,
            value,
            reason,
        }
    }

    /// Name of the offending parameter for `NonPhysicalParameter`, if any.
    pub fn field(&self) -> Option<&'static str> {
        match self {
            Error::NonPhysicalParameter { field, .. } => Some(field),
            _ => None,
        }
    }

    /// True for numerical failures (as opposed to bad inputs).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ConvergenceFailure { .. } | Error::GridTooCoarse { .. }
        )
    }
}
