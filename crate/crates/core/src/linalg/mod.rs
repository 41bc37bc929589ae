//! Exact linear algebra over Q, Z and prime fields.

mod cohomology;
pub(crate) mod dense;
mod domain;
mod matrix;
pub(crate) mod ring;
pub(crate) mod sparse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cohomology::{cohomology_at, ModuleSummary};
pub use domain::{CoefficientDomain, Scalar};
pub use matrix::ExactMatrix;

use crate::error::Error;
use dense::{dense_mul, smith, Dense, Track};
use ring::{with_ring, IntRing, Ring};
use sparse::{block_dense, blocks, nonzero_invariants};

/// Rank over the fraction field of the matrix's domain.
pub fn rank(m: &ExactMatrix) -> usize {
    with_ring!(m.domain(), |ring| nonzero_invariants(&ring, m).len())
}

/// Nonzero invariant factors of an integer matrix, as a divisibility chain
/// `d_1 | d_2 | ...` of positive integers.
pub fn invariant_factors(m: &ExactMatrix) -> Result<Vec<BigInt>, Error> {
    require_integers(m.domain())?;
    Ok(divisibility_chain(nonzero_invariants(&IntRing, m)))
}

/// Rank together with the non-unit invariant factors (empty over a field).
/// One elimination serves both.
pub fn rank_and_torsion(m: &ExactMatrix) -> (usize, Vec<BigInt>) {
    match m.domain() {
        CoefficientDomain::Integers => {
            let factors = nonzero_invariants(&IntRing, m);
            (factors.len(), divisibility_chain(factors))
        }
        _ => (rank(m), Vec::new()),
    }
}

/// Smith normal form with unimodular transforms: `left * m * right` is
/// diagonal with entries `diag`, and `left_inv`, `right_inv` invert the
/// transforms.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub diag: Vec<BigInt>,
    pub left: ExactMatrix,
    pub left_inv: ExactMatrix,
    pub right: ExactMatrix,
    pub right_inv: ExactMatrix,
}

impl SmithNormalForm {
    /// The full diagonal matrix `left * m * right`.
    pub fn diagonal_matrix(&self) -> ExactMatrix {
        let (r, c) = (self.left.rows(), self.right.cols());
        ExactMatrix::from_triplets(
            CoefficientDomain::Integers,
            r,
            c,
            self.diag
                .iter()
                .enumerate()
                .map(|(i, d)| (i, i, BigRational::from_integer(d.clone()))),
        )
    }
}

/// Dense Smith normal form over the integers.
pub fn smith_normal_form(m: &ExactMatrix) -> Result<SmithNormalForm, Error> {
    require_integers(m.domain())?;
    let ring = IntRing;
    let mut d = Dense::filled(m.rows(), m.cols(), BigInt::zero());
    for (r, row) in m.sparse_rows().iter().enumerate() {
        for (c, v) in row {
            d.set(r, c.to_owned(), ring.embed(v));
        }
    }
    let form = smith(&ring, d, Track::Both);
    let (left, left_inv) = form.transforms.left.expect("left transform was requested");
    let (right, right_inv) = form
        .transforms
        .right
        .expect("right transform was requested");
    let z = CoefficientDomain::Integers;
    Ok(SmithNormalForm {
        diag: form.diag,
        left: to_exact(&ring, z, &left),
        left_inv: to_exact(&ring, z, &left_inv),
        right: to_exact(&ring, z, &right),
        right_inv: to_exact(&ring, z, &right_inv),
    })
}

/// Columns spanning the kernel: a vector-space basis over a field, a
/// lattice basis over Z. Over Q the columns are primitive integer vectors.
pub fn kernel_basis(m: &ExactMatrix) -> ExactMatrix {
    let domain = m.domain();
    let n = m.cols();
    let mut keyed: Vec<(usize, Vec<(usize, Scalar)>)> = Vec::new();
    let bs = blocks(m);
    let mut covered = vec![false; n];
    with_ring!(domain, |ring| {
        for block in &bs {
            for &c in &block.cols {
                covered[c] = true;
            }
            let form = smith(&ring, block_dense(&ring, m, block), Track::Right);
            let (right, _) = form
                .transforms
                .right
                .expect("right transform was requested");
            for k in form.diag.len()..block.cols.len() {
                let col: Vec<(usize, Scalar)> = (0..block.cols.len())
                    .filter(|&i| !ring.is_zero(right.at(i, k)))
                    .map(|i| (block.cols[i], ring.to_scalar(right.at(i, k))))
                    .collect();
                keyed.push((block.cols[0], normalize_column(domain, col)));
            }
        }
    });
    for (c, _) in covered.iter().enumerate().filter(|(_, &cov)| !cov) {
        keyed.push((c, vec![(c, Scalar::one())]));
    }
    // Stable: block kernels keep their internal order.
    keyed.sort_by_key(|(k, _)| *k);
    let ncols = keyed.len();
    let triplets = keyed
        .into_iter()
        .enumerate()
        .flat_map(|(j, (_, col))| col.into_iter().map(move |(i, v)| (i, j, v)));
    ExactMatrix::from_triplets(domain, n, ncols, triplets)
}

/// Solves `a * x = b` column by column. `None` when some column of `b` has
/// no solution in the domain.
pub fn solve(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>, Error> {
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch(a.domain(), b.domain()));
    }
    if a.rows() != b.rows() {
        return Err(Error::Shape(format!(
            "system with {} equations against right-hand side with {} rows",
            a.rows(),
            b.rows()
        )));
    }
    let domain = a.domain();
    let bs = blocks(a);
    let mut in_block = vec![false; a.rows()];
    for block in &bs {
        for &r in &block.rows {
            in_block[r] = true;
        }
    }
    // Equations outside every block read 0 = b.
    for (r, row) in b.sparse_rows().iter().enumerate() {
        if !in_block[r] && !row.is_empty() {
            return Ok(None);
        }
    }
    let rhs_cols = b.columns();
    let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();
    let solved = with_ring!(domain, |ring| {
        let mut ok = true;
        'blocks: for block in &bs {
            let form = smith(&ring, block_dense(&ring, a, block), Track::Both);
            let (left, _) = form.transforms.left.expect("left transform was requested");
            let (right, _) = form
                .transforms
                .right
                .expect("right transform was requested");
            let rank = form.diag.len();
            for (j, col) in rhs_cols.iter().enumerate() {
                let local = Dense {
                    rows: block.rows.len(),
                    cols: 1,
                    data: block.rows.iter().map(|&r| ring.embed(&col[r])).collect(),
                };
                let c = dense_mul(&ring, &left, &local);
                let mut y = Dense::filled(block.cols.len(), 1, ring.zero());
                for i in 0..block.rows.len() {
                    let ci = c.at(i, 0);
                    if i < rank {
                        if !ring.divides(&form.diag[i], ci) {
                            ok = false;
                            break 'blocks;
                        }
                        y.set(i, 0, ring.exact_div(ci, &form.diag[i]));
                    } else if !ring.is_zero(ci) {
                        ok = false;
                        break 'blocks;
                    }
                }
                let x = dense_mul(&ring, &right, &y);
                for (i, &gc) in block.cols.iter().enumerate() {
                    if !ring.is_zero(x.at(i, 0)) {
                        triplets.push((gc, j, ring.to_scalar(x.at(i, 0))));
                    }
                }
            }
        }
        ok
    });
    if !solved {
        return Ok(None);
    }
    Ok(Some(ExactMatrix::from_triplets(
        domain,
        a.cols(),
        b.cols(),
        triplets,
    )))
}

/// True when the map is onto its codomain: over Z every invariant factor
/// is 1 and there are as many as rows.
pub fn is_surjective(m: &ExactMatrix) -> bool {
    with_ring!(m.domain(), |ring| {
        let inv = nonzero_invariants(&ring, m);
        inv.len() == m.rows() && inv.iter().all(|d| ring.is_unit(d))
    })
}

pub(crate) fn require_integers(domain: CoefficientDomain) -> Result<(), Error> {
    if domain == CoefficientDomain::Integers {
        Ok(())
    } else {
        Err(Error::WrongDomain {
            expected: "Z",
            found: domain,
        })
    }
}

/// Sorts arbitrary nonzero invariants into the canonical chain, dropping units.
pub(crate) fn divisibility_chain(factors: Vec<BigInt>) -> Vec<BigInt> {
    let mut nontrivial: Vec<BigInt> = factors
        .into_iter()
        .map(|d| d.abs())
        .filter(|d| !d.is_one())
        .collect();
    if nontrivial.is_empty() {
        return nontrivial;
    }
    nontrivial.sort();
    let n = nontrivial.len();
    let mut d = Dense::filled(n, n, BigInt::zero());
    for (i, v) in nontrivial.into_iter().enumerate() {
        d.set(i, i, v);
    }
    smith(&IntRing, d, Track::None)
        .diag
        .into_iter()
        .filter(|x| !x.is_one())
        .collect()
}

fn normalize_column(
    domain: CoefficientDomain,
    mut col: Vec<(usize, Scalar)>,
) -> Vec<(usize, Scalar)> {
    col.sort_by_key(|(i, _)| *i);
    let Some((_, lead)) = col.first().cloned() else {
        return col;
    };
    let factor = match domain {
        CoefficientDomain::Rationals => {
            let denom_lcm = col
                .iter()
                .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            let numer_gcd = col.iter().fold(BigInt::zero(), |acc, (_, v)| {
                acc.gcd(&(v.numer() * &denom_lcm / v.denom()))
            });
            let sign = if lead.is_negative() { -1 } else { 1 };
            BigRational::new(denom_lcm * sign, numer_gcd)
        }
        CoefficientDomain::Integers => {
            if lead.is_negative() {
                -BigRational::one()
            } else {
                BigRational::one()
            }
        }
        CoefficientDomain::PrimeField(p) => {
            let f = ring::PrimeField { p };
            let inv = f.unit_inv(&f.embed(&lead));
            f.to_scalar(&inv)
        }
    };
    col.into_iter()
        .map(|(i, v)| (i, domain.normalize(v * &factor)))
        .collect()
}

fn to_exact<R: Ring>(ring: &R, domain: CoefficientDomain, d: &Dense<R::Elem>) -> ExactMatrix {
    let triplets = (0..d.rows).flat_map(|i| {
        (0..d.cols).filter_map(move |j| {
            let v = d.at(i, j);
            (!ring.is_zero(v)).then(|| (i, j, ring.to_scalar(v)))
        })
    });
    ExactMatrix::from_triplets(domain, d.rows, d.cols, triplets)
}
