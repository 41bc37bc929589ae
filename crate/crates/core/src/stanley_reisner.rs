//! The face ring `R[K] = R[v_1..v_m] / (v_U : U ∉ K)`.
//!
//! Degrees here are polynomial degrees; generators sit in topological
//! degree 2.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::diagram::{exp_cohomology_diagram, limit};
use crate::error::Error;
use crate::linalg::{is_surjective, solve, CoefficientDomain, ExactMatrix, Scalar};
use crate::simplicial::{MultiSet, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StanleyReisnerAlgebra {
    pub complex: SimplicialComplex,
    pub domain: CoefficientDomain,
}

impl StanleyReisnerAlgebra {
    pub fn new(complex: SimplicialComplex, domain: CoefficientDomain) -> Self {
        StanleyReisnerAlgebra { complex, domain }
    }

    /// Whether `v_M` is a nonzero basis monomial.
    pub fn contains(&self, m: &MultiSet) -> bool {
        m.exponents().len() == self.complex.num_vertices() && self.complex.contains(m.support())
    }

    /// Monomials of degree `j` with support a face, in monomial order.
    pub fn basis(&self, j: u32) -> Vec<MultiSet> {
        let k = &self.complex;
        let mut out: Vec<MultiSet> = Vec::new();
        for facet in k.facets() {
            out.extend(MultiSet::all_within(k.num_vertices(), *facet, j));
        }
        out.sort();
        out.dedup();
        out
    }

    /// `v_{M1} v_{M2}`; `None` when the product lies in the ideal.
    pub fn multiply(&self, m1: &MultiSet, m2: &MultiSet) -> Result<Option<MultiSet>, Error> {
        for m in [m1, m2] {
            if !self.contains(m) {
                return Err(Error::NotInAlgebra(self.complex.format_face(m.support())));
            }
        }
        let product = m1.sum(m2);
        Ok(self.complex.contains(product.support()).then_some(product))
    }

    /// Number of basis monomials of degree `j`.
    pub fn hilbert_function(&self, j: u32) -> u64 {
        self.basis(j).len() as u64
    }

    /// `Σ_{σ ∈ K} C(j-1, |σ|-1)`, counting monomials by exact support.
    pub fn face_sum_hilbert(&self, j: u32) -> u64 {
        self.complex
            .faces()
            .iter()
            .map(|f| match (j, f.len()) {
                (0, 0) => 1,
                (0, _) | (_, 0) => 0,
                (j, s) => binomial(j as u64 - 1, s as u64 - 1),
            })
            .sum()
    }

    /// The Hilbert series reduced by common factors of `1 - t`, with its
    /// expansion checked against the monomial count up to `verify_to`.
    pub fn hilbert_series(&self, verify_to: u32) -> Result<HilbertSeries, Error> {
        let m = self.complex.num_vertices();
        let mut numerator = vec![0i64; m + 1];
        for f in self.complex.faces() {
            let s = f.len();
            // t^s (1 - t)^(m - s)
            for (i, c) in binomial_row(m - s).into_iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                numerator[s + i] += sign * c;
            }
        }
        let mut series = HilbertSeries {
            numerator,
            denominator_power: m,
        };
        series.reduce();
        for j in 0..=verify_to {
            let want = self.hilbert_function(j) as i64;
            let got = series.coefficient(j);
            if got != want {
                return Err(Error::Internal(format!(
                    "Hilbert series gives {got} in degree {j}, monomial count {want}"
                )));
            }
        }
        Ok(series)
    }
}

/// `numerator(t) / (1 - t)^denominator_power`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub denominator_power: usize,
}

impl HilbertSeries {
    fn reduce(&mut self) {
        trim(&mut self.numerator);
        while self.denominator_power > 0
            && !self.numerator.is_empty()
            && self.numerator.iter().sum::<i64>() == 0
        {
            // Synthetic division by (1 - t): q_i = Σ_{k ≤ i} a_k.
            let mut q = Vec::with_capacity(self.numerator.len() - 1);
            let mut acc = 0;
            for a in &self.numerator[..self.numerator.len() - 1] {
                acc += a;
                q.push(acc);
            }
            self.numerator = q;
            trim(&mut self.numerator);
            self.denominator_power -= 1;
        }
    }

    /// Coefficient of `t^j` in the expansion.
    pub fn coefficient(&self, j: u32) -> i64 {
        let j = j as usize;
        let d = self.denominator_power;
        self.numerator
            .iter()
            .enumerate()
            .take_while(|(i, _)| *i <= j)
            .map(|(i, a)| {
                // [t^n] (1 - t)^-d = C(n + d - 1, d - 1).
                let n = (j - i) as u64;
                let c = if d == 0 {
                    (n == 0) as i64
                } else {
                    binomial(n + d as u64 - 1, d as u64 - 1) as i64
                };
                a * c
            })
            .sum()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_poly(&self.numerator, "t"))?;
        match self.denominator_power {
            0 => Ok(()),
            1 => write!(f, "/(1-t)"),
            d => write!(f, "/(1-t)^{d}"),
        }
    }
}

pub(crate) fn format_poly(coeffs: &[i64], var: &str) -> String {
    let mut s = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.abs();
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { "-" } else { "+" });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() || mag != 1 {
            s.push_str(&mag.to_string());
        }
        s.push_str(&mono);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn trim(p: &mut Vec<i64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn binomial_row(n: usize) -> Vec<i64> {
    (0..=n)
        .map(|k| binomial(n as u64, k as u64) as i64)
        .collect()
}

/// How the comparison map `R[K]_j → lim H^{2j}` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeIsoFailure {
    /// Some image is not a compatible family.
    NotInLimit,
    /// The map onto the limit is not invertible.
    NotBijective {
        source_rank: usize,
        limit_rank: usize,
    },
    /// Componentwise product disagrees with the face-ring product.
    Product { left: String, right: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeIsoWitness {
    pub degree: u32,
    pub failure: EdgeIsoFailure,
}

/// Checks, for each `j ≤ j_max`, that projecting monomials to every face
/// gives a basis of `lim H^{2j}`, and that componentwise products of the
/// projections agree with products in `R[K]`.
pub fn edge_iso_check(
    k: &SimplicialComplex,
    domain: CoefficientDomain,
    j_max: u32,
) -> Result<(), EdgeIsoWitness> {
    let algebra = StanleyReisnerAlgebra::new(k.clone(), domain);
    let m = k.num_vertices();
    // Per degree: basis monomials at each face, and the images h(v_M).
    let mut face_monos: Vec<Vec<Vec<MultiSet>>> = Vec::new();
    let mut images: Vec<BTreeMap<MultiSet, Vec<Vec<Scalar>>>> = Vec::new();
    for j in 0..=j_max {
        let fail = |failure| EdgeIsoWitness { degree: j, failure };
        let monos: Vec<Vec<MultiSet>> = k
            .faces()
            .iter()
            .map(|f| MultiSet::all_within(m, *f, j))
            .collect();
        let basis = algebra.basis(j);
        let mut h = BTreeMap::new();
        let mut columns = Vec::with_capacity(basis.len());
        for b in &basis {
            let comps: Vec<Vec<Scalar>> = monos
                .iter()
                .map(|ms| ms.iter().map(|x| indicator(x == b)).collect())
                .collect();
            columns.push(comps.concat());
            h.insert(b.clone(), comps);
        }
        let lim = limit(&exp_cohomology_diagram(k, j, domain).contra);
        let hm = ExactMatrix::from_columns(domain, lim.ambient_dim(), &columns);
        let coords = solve(&lim.basis, &hm)
            .expect("shapes agree")
            .ok_or_else(|| fail(EdgeIsoFailure::NotInLimit))?;
        if coords.rows() != coords.cols() || !is_surjective(&coords) {
            return Err(fail(EdgeIsoFailure::NotBijective {
                source_rank: basis.len(),
                limit_rank: lim.rank(),
            }));
        }
        face_monos.push(monos);
        images.push(h);
    }
    for j in 0..=j_max {
        for j1 in 0..=j / 2 {
            let j2 = j - j1;
            for (a, ha) in &images[j1 as usize] {
                for (b, hb) in &images[j2 as usize] {
                    let expected = match algebra.multiply(a, b).expect("basis monomials") {
                        Some(ab) => images[j as usize][&ab].clone(),
                        None => face_monos[j as usize]
                            .iter()
                            .map(|ms| vec![Scalar::zero(); ms.len()])
                            .collect(),
                    };
                    let got: Vec<Vec<Scalar>> = (0..k.num_faces())
                        .map(|f| {
                            multiply_components(
                                domain,
                                &face_monos[j1 as usize][f],
                                &ha[f],
                                &face_monos[j2 as usize][f],
                                &hb[f],
                                &face_monos[j as usize][f],
                            )
                        })
                        .collect();
                    if got != expected {
                        return Err(EdgeIsoWitness {
                            degree: j,
                            failure: EdgeIsoFailure::Product {
                                left: a.monomial(k.labels()),
                                right: b.monomial(k.labels()),
                            },
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn indicator(b: bool) -> Scalar {
    if b {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// Product of two polynomials in the polynomial ring on one face, given by
/// coefficient vectors over monomial bases.
fn multiply_components(
    domain: CoefficientDomain,
    basis_a: &[MultiSet],
    a: &[Scalar],
    basis_b: &[MultiSet],
    b: &[Scalar],
    basis_out: &[MultiSet],
) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); basis_out.len()];
    for (ma, ca) in basis_a.iter().zip(a).filter(|(_, c)| !c.is_zero()) {
        for (mb, cb) in basis_b.iter().zip(b).filter(|(_, c)| !c.is_zero()) {
            let pos = basis_out
                .binary_search(&ma.sum(mb))
                .expect("product of face monomials stays on the face");
            out[pos] = domain.add(&out[pos], &domain.mul(ca, cb));
        }
    }
    out
}
