use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group has more than {0} elements")]
    ElementCap(usize),
    #[error("group is not transitive")]
    NotTransitive,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("dimension {0} is too large for brute-force facet enumeration")]
    FacetDimension(usize),
    #[error("matrix does not commute with the group")]
    NonCommuting,
    #[error("matrix does not normalize the group")]
    NonNormalizing,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("zero projection onto component {0}")]
    ZeroProjection(usize),
    #[error("not a core point")]
    NotCorePoint,
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
