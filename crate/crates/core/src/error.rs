use thiserror::Error;

use crate::ring::{Axiom, Elem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),
    #[error("ring axiom violated: {axiom} (witness {witness:?})")]
    AxiomViolation { axiom: Axiom, witness: Vec<Elem> },
    #[error("capacity exceeded: {what} needs order <= {cap}, ring has order {order}")]
    Capacity {
        what: &'static str,
        cap: usize,
        order: usize,
    },
    #[error("ideal is not two-sided (absorption fails for {0} * {1})")]
    NotTwoSided(Elem, Elem),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("map is not a unital ring endomorphism: {0}")]
    NotEndomorphism(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("i/o error reading {path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("unknown monoid kind `{0}` (expected N, Z or `N^k lex`)")]
    UnknownKind(String),
    #[error("element {0} is not in the monoid")]
    NotInMonoid(String),
    #[error("exponent overflow")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series belong to different actions")]
    ActionMismatch,
    #[error("generator {index} does not commute with generator {other} (at element {witness})")]
    NonCommuting {
        index: usize,
        other: usize,
        witness: Elem,
    },
    #[error("generator {index} is not bijective (collision at element {witness}); required for group exponents")]
    NotBijective { index: usize, witness: Elem },
    #[error("expected {expected} generator images, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("cannot parse series `{input}`: {msg}")]
    Parse { input: String, msg: String },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("enumeration needs {needed} pairs but the budget is {budget}; shrink the window or use random mode")]
    Budget { needed: u128, budget: u128 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

impl CheckError {
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            CheckError::Budget { .. } | CheckError::Ring(RingError::Capacity { .. })
        )
    }
}
