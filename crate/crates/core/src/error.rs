use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is empty or not square")]
    NotSquare,
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    BadEntry {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("{line} {index} repeats an entry")]
    NotLatin { line: &'static str, index: usize },
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoTwoSidedInverse(usize),
    #[error("negative power of element {0} without a two-sided inverse")]
    NoInverse(usize),
    #[error("the subloop generated by element {0} is not associative")]
    NotPowerAssociative(usize),
    #[error("element {element} out of range for order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("permutations have different degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("permutation group of degree 0")]
    EmptyDegree,
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group of order {0} is too large to enumerate")]
    TooLargeToEnumerate(u128),

    #[error("set is not a subloop")]
    NotASubloop,
    #[error("subloop is not normal")]
    NotNormal,
    #[error("coset multiplication is not well defined")]
    IllDefined,
    #[error("squaring map is not a bijection")]
    SquaringNotBijective,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cocycle is not normalized")]
    NotNormalized,
    #[error("{0} is not a unit modulo 9")]
    NotAUnit(u8),
    #[error("construction did not produce a loop: {0}")]
    NotALoop(String),
    #[error("block does not contain every element of Z9")]
    BadK,
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),

    #[error("factor loop is not a group")]
    NotAGroup,
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("inconsistent search constraints: {0}")]
    InconsistentSpec(String),
    #[error("time limit exceeded")]
    Timeout,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
