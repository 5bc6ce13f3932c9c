use thiserror::Error;

/// Errors raised by the library. Vertex and letter indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("matrix is not square/skew-symmetric: {0}")]
    NotSkewSymmetric(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("exchange matrix is not acyclic")]
    NotAcyclic,
    #[error("exchange matrix is not normalized (need b[i][j] >= 0 for i < j)")]
    NotNormalized,
    #[error("exchange matrix is not 2-complete")]
    NotTwoComplete,
    #[error("no decreasing mutation exists")]
    NoDecreasingMutation,
    #[error("more than one decreasing mutation: {0:?}")]
    MultipleDecreasing(Vec<usize>),
    #[error("matrix is not mutation-acyclic (stuck after path {path:?})")]
    NotMutationAcyclic { path: Vec<usize> },
    #[error("vertex order is not total (tournament incomplete)")]
    NotTotal,

    #[error("word {0:?} does not reduce to a reflection")]
    NotAReflection(Vec<usize>),

    #[error("vector has <v,v> = {0}, expected 2")]
    NotUnitRoot(String),
    #[error("root {0:?} is not sign-coherent")]
    SignIncoherent(Vec<String>),
    #[error("zero vector has no sign")]
    ZeroVector,
    #[error("{0:?} is not a real root")]
    NotARealRoot(Vec<String>),
    #[error("rank {0} exceeds the brute-force limit of 8")]
    RankTooLarge(usize),

    #[error("arc crossing sequence {crossings:?} -> {endpoint} is not reduced")]
    Unreduced { crossings: Vec<usize>, endpoint: usize },
    #[error("expected {expected} arcs, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("braid swap needs 1 <= i < j <= n, got i={i}, j={j}, n={n}")]
    IndexOrder { i: usize, j: usize, n: usize },
    #[error("twin needs distinct endpoints, both are {0}")]
    TwinEndpointClash(usize),
    #[error("|beta0| = {len} must exceed {bound}")]
    LengthPreconditionViolated { len: usize, bound: usize },
    #[error("tuple has a bad pair starting at position {0}")]
    TupleHasBadPair(usize),
    #[error("both twins form bad pairs with gamma at position {0}")]
    AssertionFailure(usize),
    #[error("crossing count {len} exceeds cap {cap}")]
    CapExceeded { len: usize, cap: usize },
    #[error("arc is not embeddable")]
    NotEmbeddable,
    #[error("depth must be positive")]
    BadDepth,
    #[error("root not found within depth {0}; increase the depth")]
    DepthExhausted(usize),
    #[error("{what} would exceed the cap of {cap} nodes")]
    TooManyNodes { what: String, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
