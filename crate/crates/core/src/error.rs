use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every estimator in the crate.
///
/// `BudgetExhausted` and `InsufficientSample` are data-dependent outcomes a
/// caller is expected to handle; `InvalidArgument` is a contract violation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A query ladder ran `queries` steps without crossing its threshold.
    #[error("query stream exhausted after {queries} queries without crossing the threshold")]
    BudgetExhausted { queries: usize },

    #[error("insufficient sample: n = {n}, need more than {required:.2}")]
    InsufficientSample { n: usize, required: f64 },

    #[error("value out of representable range: {0}")]
    OutOfRange(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Stable machine-readable identifier, used for CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid_argument",
            Error::BudgetExhausted { .. } => "budget_exhausted",
            Error::InsufficientSample { .. } => "insufficient_sample",
            Error::OutOfRange(_) => "out_of_range",
            Error::Unsupported(_) => "unsupported",
        }
    }
}
