use thiserror::Error;

use crate::tensor::TensorShape;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("tensor dimension must be at least 1")]
    ZeroDimension,
    #[error("{kind} slot {slot} out of range for a tensor with {count} such slots")]
    SlotOutOfRange {
        kind: &'static str,
        slot: usize,
        count: usize,
    },
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch {
        expected: TensorShape,
        found: TensorShape,
    },
    #[error("expected {expected} operands, found {found}")]
    OperandCount { expected: usize, found: usize },
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid chain convention: {0}")]
    InvalidConvention(String),
    #[error("arity {arity} exceeds word length {length}")]
    ArityTooLarge { arity: usize, length: usize },
    #[error("family index must be at least 1")]
    EmptyFamily,
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
