//! Exact computations with Stanley–Reisner algebras and diagrams of modules
//! over face posets: limits, derived limits, fatness, and the rational
//! models of complete-intersection complexes.

pub mod corpus;
pub mod diagram;
pub mod error;
pub mod higher;
pub mod linalg;
pub mod rational;
pub mod simplicial;
pub mod stanley_reisner;
pub mod verify;

pub use error::Error;
pub use linalg::{CoefficientDomain, ExactMatrix, ModuleSummary, Scalar};
pub use simplicial::{Face, MultiSet, SimplicialComplex, Vertex};
