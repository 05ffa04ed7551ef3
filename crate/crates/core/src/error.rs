use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: bad tuples, foreign subcomplexes, shape mismatches.
    #[error("validation error: {0}")]
    Validation(String),
    /// Well-formed input violating an operation's hypotheses.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The inclusion `Z -> N` (or `(Z, Z∩Y) -> (N, N')`) is not a homology
    /// isomorphism, so the class cannot be pulled back to `Z`.
    #[error("retract condition failed: {0}; increase presubdivide")]
    RetractFailed(String),
    /// A mathematical identity that must hold did not.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
