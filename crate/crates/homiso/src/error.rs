use thiserror::Error;

/// Errors produced by bound computations, form evaluation, and the
/// subspace constructions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Checked integer arithmetic overflowed; the dimension-bound
    /// functions grow far beyond u64 already for small inputs.
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    /// The ambient dimension is below the bound required by the
    /// construction. `required` is `None` when the bound itself
    /// overflows u64.
    #[error("ambient dimension {actual} is below the required bound {}",
            required.map(|r| r.to_string()).unwrap_or_else(|| "(beyond u64)".into()))]
    BoundViolation { required: Option<u64>, actual: usize },

    #[error("rank deficiency: {0}")]
    RankDeficient(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
