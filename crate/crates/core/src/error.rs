use thiserror::Error;

/// Failure modes shared by every module of the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid cocycle: condition fails at {witness:?}")]
    InvalidCocycle { witness: Vec<usize> },
    #[error("resource limit: {what} needs {needed}, budget is {budget}")]
    ResourceLimit {
        what: String,
        needed: usize,
        budget: usize,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a graded division algebra: {reason}")]
    NotDivisionAlgebra { reason: String, witness: Vec<String> },
    #[error("invalid symmetry data: {0}")]
    InvalidSymmetryData(String),
    #[error("symmetry not present: {0}")]
    SymmetryNotPresent(String),
    #[error("invalid antiunitary: {0}")]
    InvalidAntiunitary(String),
    #[error("representation is not projective at pair ({0}, {1})")]
    NotProjective(usize, usize),
    #[error("unsupported scalar: {0}")]
    UnsupportedScalar(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, MagError>;

impl MagError {
    pub fn param(msg: impl Into<String>) -> Self {
        MagError::InvalidParameter(msg.into())
    }
}
