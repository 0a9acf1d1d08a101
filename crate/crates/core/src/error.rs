use thiserror::Error;

use crate::exact::ExactError;
use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FqgError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("algebra signature mismatch")]
    SignatureMismatch,
    #[error("tensor arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("construction failed: axiom `{axiom}` fails at basis element {basis}")]
    Construction { axiom: String, basis: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("not a state: {0}")]
    NotAState(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate projection: {0}")]
    DegenerateProjection(String),
    #[error("descriptor error: {0}")]
    Descriptor(String),
}

pub type Result<T, E = FqgError> = std::result::Result<T, E>;
