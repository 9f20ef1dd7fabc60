use thiserror::Error;

/// Errors produced by the toolkit.
///
/// Axiom violations discovered by validation are *not* errors; they are
/// returned as data (see [`crate::coalgebra::ValidationReport`]). Errors here
/// are misuse of an operation (dimension mismatches, malformed input) or
/// internal self-check failures that should be unreachable on valid data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension {dim} exceeds the ambient-dimension cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },

    #[error("invalid rational literal {literal:?}: {reason}")]
    InvalidScalar { literal: String, reason: String },

    #[error("coalgebra axioms violated: {0}")]
    InvalidCoalgebra(String),

    #[error("operation requires a nonzero element")]
    ZeroElement,

    #[error("duplicate name {0:?}")]
    DuplicateName(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),

    #[error("unknown basis name {0:?}")]
    UnknownBasisName(String),

    #[error("arrows {first:?} and {second:?} do not compose: target of the first is not the source of the second")]
    NonComposablePath { first: String, second: String },

    #[error("path set is not closed under subpaths: missing {missing:?}")]
    NotSubpathClosed { missing: String },

    #[error("thick-arrow quiver requires at least one arrow")]
    EmptyThickArrow,

    #[error("quiver has an oriented cycle through {0:?}")]
    CyclicQuiver(String),

    #[error("tensor representation does not reconstruct the comultiplication of the element")]
    RepresentationMismatch,

    #[error("gap sequence violates its invariants: {0}")]
    InvalidGapSequence(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
