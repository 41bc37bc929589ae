use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{rank, rank_and_torsion, CoefficientDomain, ExactMatrix};
use crate::error::Error;

/// A finitely generated module: free rank plus torsion invariant factors
/// `d_1 | d_2 | ...`, each greater than 1. Over a field the torsion list is
/// always empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModuleSummary {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl ModuleSummary {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        ModuleSummary {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Checks the divisibility chain and the field condition.
    pub fn is_valid_over(&self, domain: CoefficientDomain) -> bool {
        if domain.is_field() && !self.torsion.is_empty() {
            return false;
        }
        let positive = self.torsion.iter().all(|d| *d > BigInt::one());
        let chain = self
            .torsion
            .windows(2)
            .all(|w| (&w[1] % &w[0]) == BigInt::from(0));
        positive && chain
    }
}

impl fmt::Display for ModuleSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("R^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cohomology `ker(d_out) / im(d_in)` at the middle term of
/// `A --d_in--> B --d_out--> C`.
pub fn cohomology_at(d_in: &ExactMatrix, d_out: &ExactMatrix) -> Result<ModuleSummary, Error> {
    if d_in.domain() != d_out.domain() {
        return Err(Error::DomainMismatch(d_in.domain(), d_out.domain()));
    }
    if d_out.cols() != d_in.rows() {
        return Err(Error::Shape(format!(
            "d_in lands in rank {} but d_out starts from rank {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NonzeroComposite);
    }
    let middle = d_in.rows();
    let out_rank = rank(d_out);
    let (in_rank, torsion) = rank_and_torsion(d_in);
    Ok(ModuleSummary {
        free_rank: middle - out_rank - in_rank,
        torsion,
    })
}
