use thiserror::Error;

use crate::finset::Label;

/// Errors raised by the finite-set constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinSetError {
    #[error("duplicate element label {0}")]
    DuplicateLabel(Label),
    #[error("unknown element label {0}")]
    UnknownLabel(Label),
    #[error("function table is not total: {missing} of {expected} entries missing")]
    NotTotal { expected: usize, missing: usize },
    #[error("table entry {value} out of range for a codomain of size {size}")]
    OutOfRange { value: usize, size: usize },
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("maps do not form a cone over the limit diagram at element {0}")]
    NotACone(Label),
}

/// Crate-level error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    FinSet(#[from] FinSetError),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("spans do not share endpoints: {0}")]
    EndpointMismatch(String),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("base category lacks a pullback for the cospan ({first}, {second})")]
    MissingPullback { first: String, second: String },
    #[error("not a fibration: no cartesian lift of {object} along {morphism}")]
    NotAFibration { object: String, morphism: String },
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid internal structure: {0}")]
    InvalidInternal(String),
    #[error("invalid family morphism: {0}")]
    InvalidFamMorphism(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
