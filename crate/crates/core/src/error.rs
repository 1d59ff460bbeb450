use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A mathematical hypothesis required by an operation does not hold.
    /// `hypothesis` names the condition; `reason` says how it failed.
    #[error("hypothesis `{hypothesis}` failed: {reason}")]
    Hypothesis {
        hypothesis: &'static str,
        reason: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown function `{name}`; available: {available}")]
    UnknownFunction { name: String, available: String },
    #[error("tolerance {tol:e} is unreachable: {reason}")]
    UnreachableTolerance { tol: f64, reason: String },
}

impl Error {
    pub(crate) fn hypothesis(hypothesis: &'static str, reason: impl Into<String>) -> Self {
        Error::Hypothesis {
            hypothesis,
            reason: reason.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Name of the failed hypothesis, when this is a hypothesis rejection.
    pub fn hypothesis_name(&self) -> Option<&'static str> {
        match self {
            Error::Hypothesis { hypothesis, .. } => Some(hypothesis),
            _ => None,
        }
    }
}
