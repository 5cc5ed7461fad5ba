use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree must be positive")]
    InvalidDegree,

    #[error("partition parts must be positive integers")]
    InvalidPartition,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutation is not twisted-symmetric: conjugation by tau does not invert it")]
    NotTwistedSymmetric,

    #[error("ramification profiles have different sizes ({0} vs {1})")]
    SizeMismatch(u64, u64),

    #[error("no branch points: g - 1 + l(mu) + l(nu) must be positive")]
    NoBranchPoints,

    #[error("{needed} points exceed the enumeration cap of {cap}")]
    CapExceeded { needed: usize, cap: usize },

    #[error("negative number of simple branch points")]
    NegativeBranchCount,

    #[error("point lies on the wall {0}")]
    OnWall(String),

    #[error("no wall with these index sets exists for this shape")]
    InvalidWall,

    #[error("point does not lie in the claimed chamber")]
    ChamberMismatch,

    #[error("chambers do not differ in exactly the crossed wall")]
    NotAdjacent,

    #[error("fewer than {wanted} lattice points in the chamber within bound {bound}")]
    EmptyChamber { wanted: usize, bound: u64 },

    #[error("interpolation system is singular even after resampling")]
    SingularSystem,

    #[error("held-out node mismatch: interpolant violates the degree bound")]
    DegreeBoundViolated,

    #[error("quotient graph has positive genus; edge splits need a tree")]
    QuotientNotTree,

    #[error("{0}")]
    Invalid(String),
}
