use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty lattice")]
    EmptyLattice,
    #[error("trivial intersection")]
    TrivialIntersection,
    #[error("non-primitive sublattice")]
    NotSaturated,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("linearly dependent input vectors")]
    DependentVectors,
    #[error("operation requires an integral lattice")]
    NotIntegral,
    #[error("lattice already spans the ambient space")]
    FullRank,
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("rank {0} exceeds the enumeration guard {1}")]
    RankGuard(usize, usize),
    #[error("bound too small: {0}")]
    BoundTooSmall(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
