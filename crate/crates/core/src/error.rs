use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {0} is not supported (2 <= q <= 256)")]
    Unsupported(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("bad arguments: {0}")]
    BadArgs(String),
    #[error("family members have different ambient spaces")]
    MixedAmbient,
    #[error("family members have different dimensions")]
    MixedDimension,
    #[error("duplicate subspace at position {0}")]
    DuplicateMember(usize),
    #[error("family is empty")]
    EmptyFamily,
    #[error("configuration members are not pairwise distinct")]
    NotDistinct,
    #[error("a cluster needs at least two members, got {0}")]
    BadArity(usize),
    #[error("pivot is not a member of the family")]
    PivotNotMember,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("family contains a covering triple")]
    NotCoveringTripleFree,
    #[error("layer {layer} outside 1..={max}")]
    BadLayer { layer: usize, max: usize },
    #[error("vertex {0} of Y contains no vertex of X")]
    UnmatchedUncoverable(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
