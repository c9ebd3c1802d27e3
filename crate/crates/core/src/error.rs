use thiserror::Error;

use crate::finset::{Atom, FinSet};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("boundary mismatch: expected {expected}, found {found}")]
    BoundaryMismatch { expected: FinSet, found: FinSet },

    #[error("duplicate atom {0} in finite set")]
    DuplicateAtom(Atom),

    #[error("atom {atom} is not an element of {set}")]
    UnknownAtom { atom: Atom, set: FinSet },

    #[error("function is not total: {0} values for a domain of size {1}")]
    NotTotal(usize, usize),

    #[error("map of spans does not commute with the {leg} leg at apex element {at}")]
    LegMismatch { leg: &'static str, at: Atom },

    #[error("label boundary violated at {at}: {detail}")]
    LabelBoundary { at: Atom, detail: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("category axiom violated: {0}")]
    CategoryAxiom(String),

    #[error("functor law violated: {0}")]
    FunctorLaw(String),

    #[error("naturality violated: {0}")]
    Naturality(String),

    #[error("transport cell is not invertible: {0}")]
    NotInvertible(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("schema error at {path}: {detail}")]
    Schema { path: String, detail: String },
}
