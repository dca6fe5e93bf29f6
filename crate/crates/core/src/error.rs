use thiserror::Error;

use crate::coeff::Ring;

/// Errors produced by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("context mismatch: operands live in different Baxter algebras")]
    ContextMismatch,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unsupported valuation: {0}")]
    UnsupportedValuation(String),
    #[error("{0} is not invertible in {1}")]
    NotInvertible(String, Ring),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("precision {requested} exceeds available precision {available}")]
    Precision { requested: usize, available: usize },
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("evaluation error: {0}")]
    Eval(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
