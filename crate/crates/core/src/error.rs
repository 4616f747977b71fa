use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("unit law fails for basis element {0}")]
    UnitLaw(usize),
    #[error("invalid structure constants: {0}")]
    InvalidTable(String),
    #[error("invalid module action: {0}")]
    InvalidAction(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("enumeration over budget: {needed} candidates, budget {budget}")]
    OverBudget { needed: u128, budget: u64 },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("subspace is not a submodule")]
    NotSubmodule,
    #[error("subspace is not a {0} ideal")]
    NotIdeal(&'static str),
    #[error("expected a proper submodule or ideal")]
    NotProper,
    #[error("algebra has no transpose involution")]
    NoTranspose,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("invalid input: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
