use thiserror::Error;

use crate::lattice::ElementId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation is not a lattice: elements {a} and {b} lack a unique {bound}")]
    NotALattice {
        a: ElementId,
        b: ElementId,
        bound: &'static str,
    },

    #[error("relation is not a partial order: {0}")]
    NotAnOrder(String),

    #[error("transitive closure creates a cycle through {a} and {b}")]
    AntisymmetryBroken { a: ElementId, b: ElementId },

    #[error("augmentation does not yield a lattice relation")]
    NotALatticeAfterAugmentation,

    #[error("lattice is not distributive")]
    NotDistributive,

    #[error("lattice is not modular")]
    NotModular,

    #[error("lattice structure error: {0}")]
    Structure(String),

    #[error("set of endofunctions is empty")]
    EmptySet,

    #[error("enumeration budget exceeded: about {estimated} candidates, budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },

    #[error("no join-endomorphism found after {0} attempts")]
    RetryExhausted(usize),

    #[error("value {value} out of range (expected {expected})")]
    OutOfRange { value: usize, expected: String },

    #[error("element {0} does not belong to a lattice of size {1}")]
    InvalidElement(usize, usize),

    #[error("endofunction has {got} values but the lattice has {expected} elements")]
    SizeMismatch { expected: usize, got: usize },

    #[error("no distributive lattice of size {wanted} found; closest size was {closest}")]
    SizeUnreachable { wanted: usize, closest: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
