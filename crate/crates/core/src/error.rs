use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index parts must be positive, got {0}")]
    NonPositivePart(i64),

    #[error("cannot parse index from {0:?}")]
    ParseIndex(String),

    #[error("cannot parse word from {0:?}: letters must be A or B")]
    ParseWord(String),

    #[error("index {0} is not admissible (last part must be at least 2)")]
    NotAdmissible(String),

    #[error("word {0} does not end with B")]
    WordNotBTerminated(String),

    #[error("surjection {{1..{n}}} -> {{1..{m}}} requires 1 <= m <= n")]
    SurjectionRange { n: usize, m: usize },

    #[error("depth mismatch: expected {expected}, got {actual}")]
    DepthMismatch { expected: usize, actual: usize },

    #[error("cone weight is undefined at a point with a zero coordinate")]
    ZeroCoordinate,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {p} must exceed the depth {depth}")]
    PrimeTooSmall { p: u64, depth: usize },

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degree {0} must be even")]
    OddDegree(u32),

    #[error("weight and depth parity precondition failed for {0}")]
    Parity(String),

    #[error("weight 2 is excluded for {0}")]
    WeightTwo(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
