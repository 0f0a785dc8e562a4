use thiserror::Error;

/// Error taxonomy shared by every module.
///
/// `DomainError` covers bad inputs (wrong divisibility, excluded parameter
/// values, out-of-range indices).  `PrecisionExhausted` and
/// `ResourceExhausted` are the two "computation gave up" outcomes: the first
/// when certification keeps failing at the precision cap, the second when a
/// symbolic computation overruns its size budget.  `InternalInconsistency`
/// signals a violated mathematical invariant, i.e. a bug, never bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("excluded parameter: {0}")]
    ExcludedParameter(String),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("cycle degenerate: {0}")]
    CycleDegenerate(String),
    #[error("indeterminate input: {0}")]
    IndeterminateInput(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("resource exhausted: {0}")]
    ResourceExhausted(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
