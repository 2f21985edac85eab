use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator vanishes under the substitution")]
    DenominatorVanishes,
    #[error("pole in coefficient: {0}")]
    Pole(String),
    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<i64>),
    #[error("k = {k} outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("partition {0:?} has more than {1} parts")]
    LengthExceedsVariables(Vec<u32>, usize),
    #[error("variable counts differ: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("sizes differ: {0} vs {1}")]
    SizeMismatch(u32, u32),
    #[error("nonzero coefficient on non-dominant weight {0:?}")]
    NonDominantTarget(Vec<i64>),
    #[error("eigenvalue collision between {0:?} and {1:?}")]
    EigenvalueCollision(Vec<u32>, Vec<u32>),
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("lambda_{k} = {value} is not zero")]
    LambdaKNonzero { k: usize, value: u32 },
    #[error("r = {r} out of range (at most {max})")]
    ROutOfRange { r: u32, max: u32 },
    #[error("singular Vandermonde: two v_i coincide")]
    VandermondeSingular,
    #[error("two shifted parameters coincide")]
    SingularDifference,
    #[error("conjugating sequence vanishes at {0:?}")]
    ZeroScaling(Vec<i64>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
