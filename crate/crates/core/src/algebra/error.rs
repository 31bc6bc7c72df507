use thiserror::Error;

use super::parse::PolyParseError;
use super::univariate::FactorError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Parse(#[from] PolyParseError),
    #[error("relation {relation} maps to {residue}, not zero")]
    NotWellDefined { relation: String, residue: String },
    #[error("expected {expected} generator images, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("element {0} does not live in the codomain")]
    ForeignElement(String),
    #[error("{0} is infinite-dimensional")]
    InfiniteDimensional(String),
    #[error("{0} is positive-dimensional; points cannot be enumerated")]
    PositiveDimensional(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("no splitting element found for {0}")]
    SplittingFailed(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
}
