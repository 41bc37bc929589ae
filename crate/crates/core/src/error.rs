use thiserror::Error;

use crate::linalg::CoefficientDomain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported coefficient domain `{0}` (expected Q, Z or F<p>)")]
    UnsupportedDomain(String),
    #[error("operation requires {expected}, got {found}")]
    WrongDomain {
        expected: &'static str,
        found: CoefficientDomain,
    },
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(CoefficientDomain, CoefficientDomain),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("composite of differentials is nonzero")]
    NonzeroComposite,

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("vertex label `{0}` declared twice")]
    DuplicateLabel(String),
    #[error("vertex `{0}` repeated inside a facet")]
    DuplicateVertex(String),
    #[error("at most {max} vertices are supported, got {found}")]
    TooManyVertices { max: usize, found: usize },
    #[error("{0} is not a face of the complex")]
    NotAFace(String),
    #[error("{0} is not a maximal face of the complex")]
    NotMaximal(String),

    #[error("diagram is malformed: {0}")]
    MalformedDiagram(String),
    #[error("family is not compatible: {0}")]
    IncompatibleFamily(String),
    #[error("the empty face has an empty boundary; nothing to split")]
    EmptyFaceSplitting,
    #[error("diagram lives on a different complex than the deletion of the given face")]
    ComplexMismatch,

    #[error("monomial with support {0} is not in the algebra")]
    NotInAlgebra(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
