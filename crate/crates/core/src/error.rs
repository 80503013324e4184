use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be positive, got {0}")]
    ZeroGenus(u32),

    #[error("operands live on different spaces")]
    SpaceMismatch,

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("malformed factor index set {indices:?} for arity {arity}")]
    BadIndexSet { indices: Vec<usize>, arity: usize },

    #[error("not a permutation of {arity} factors: {perm:?}")]
    BadPermutation { perm: Vec<usize>, arity: usize },

    #[error("degree {0} is not realized by the decomposition")]
    UnrealizedDegree(u32),

    #[error("{what}: {needed} terms exceed the cap of {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    #[error("linear system has no unique solution: {0}")]
    Singular(String),

    #[error("class is not decomposable: residue has {0} terms")]
    NotDecomposable(usize),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
