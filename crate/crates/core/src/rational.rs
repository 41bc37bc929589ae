//! Complete-intersection complexes over Q and their minimal models.
//!
//! A complex is a complete intersection when its minimal non-faces
//! `λ(1), ..., λ(t)` are pairwise disjoint. The model is then
//! `Q[v_1..v_m] ⊗ Λ(w(1)..w(t))` with `|v| = 2`, `|w(k)| = 2n(k) - 1` and
//! `dw(k) = v_{λ(k)}`; its cohomology must be the face ring.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg::{cohomology_at, rank, CoefficientDomain, ExactMatrix, Scalar};
use crate::simplicial::{Face, MultiSet, SimplicialComplex};
use crate::stanley_reisner::StanleyReisnerAlgebra;

const Q: CoefficientDomain = CoefficientDomain::Rationals;

/// Disjoint vertex sets whose supersets are exactly the non-faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CIPresentation {
    pub complex: SimplicialComplex,
    pub lambdas: Vec<Face>,
}

impl CIPresentation {
    /// The complex on `labels` obtained from the full simplex by deleting
    /// every face that contains some `λ(k)`.
    pub fn new(labels: Vec<String>, lambdas: Vec<Face>) -> Result<Self, Error> {
        let all = Face::from_indices(0..labels.len());
        for (i, a) in lambdas.iter().enumerate() {
            if a.is_empty() || !a.is_subset(all) {
                return Err(Error::IncompatibleFamily(format!(
                    "relation {a:?} is empty or uses unknown vertices"
                )));
            }
            if lambdas[..i].iter().any(|b| !a.intersection(*b).is_empty()) {
                return Err(Error::IncompatibleFamily(format!(
                    "relation {a:?} overlaps another"
                )));
            }
        }
        let complex = reconstruct(labels, &lambdas);
        Ok(CIPresentation { complex, lambdas })
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.lambdas.iter().map(|l| l.len()).collect()
    }

    /// Number of relations `t`.
    pub fn t(&self) -> usize {
        self.lambdas.len()
    }

    /// Total size `n = Σ n(k)`.
    pub fn n(&self) -> usize {
        self.sizes().iter().sum()
    }

    pub fn m(&self) -> usize {
        self.complex.num_vertices()
    }
}

fn reconstruct(labels: Vec<String>, lambdas: &[Face]) -> SimplicialComplex {
    let full = SimplicialComplex::simplex(labels);
    full.subcomplex(|f| !lambdas.iter().any(|l| l.is_subset(f)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotCiReason {
    /// The complex has no faces at all.
    Void,
    /// Two minimal non-faces share a vertex.
    Overlap(Face, Face),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CiDetection {
    CompleteIntersection(CIPresentation),
    NotCi(NotCiReason),
}

/// Classifies a complex by its minimal non-faces.
pub fn ci_detect(k: &SimplicialComplex) -> CiDetection {
    if k.is_void() {
        return CiDetection::NotCi(NotCiReason::Void);
    }
    let lambdas = k.minimal_nonfaces();
    for (i, a) in lambdas.iter().enumerate() {
        for b in &lambdas[i + 1..] {
            if !a.intersection(*b).is_empty() {
                return CiDetection::NotCi(NotCiReason::Overlap(*a, *b));
            }
        }
    }
    let rebuilt = reconstruct(k.labels().to_vec(), &lambdas);
    assert_eq!(
        &rebuilt, k,
        "a complex is determined by its minimal non-faces"
    );
    CiDetection::CompleteIntersection(CIPresentation {
        complex: k.clone(),
        lambdas,
    })
}

/// A polynomial over Q in the vertex variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: BTreeMap<MultiSet, Scalar>,
}

impl Polynomial {
    pub fn monomial(m: MultiSet, c: Scalar) -> Self {
        let mut p = Polynomial::default();
        p.add_term(m, c);
        p
    }

    /// `v_σ`.
    pub fn of_face(num_vertices: usize, face: Face) -> Self {
        Self::monomial(MultiSet::of_face(num_vertices, face), Scalar::one())
    }

    /// Linear form `Σ c_i v_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let m = coeffs.len();
        let mut p = Polynomial::default();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(MultiSet::of_face(m, Face::from_indices([i])), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: MultiSet, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.sum(b), ca * cb);
            }
        }
        out
    }

    /// Polynomial degree when homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(MultiSet::cardinality);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn format(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mono = m.monomial(labels);
            if mag.is_one() {
                s.push_str(&mono);
            } else if mono == "1" {
                s.push_str(&mag.to_string());
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Topological degree.
    pub degree: u32,
    pub odd: bool,
}

/// A free graded-commutative algebra on `m` degree-2 generators followed by
/// odd generators, with the differential of each odd generator a
/// polynomial in the even ones. Even generators are cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SullivanModel {
    pub labels: Vec<String>,
    pub generators: Vec<Generator>,
    /// `d` of each generator, aligned with `generators`.
    pub differential: Vec<Polynomial>,
}

impl SullivanModel {
    pub fn num_even(&self) -> usize {
        self.labels.len()
    }

    /// Differentials of the odd generators.
    pub fn odd_differentials(&self) -> &[Polynomial] {
        &self.differential[self.num_even()..]
    }

    /// Replaces `dw(k)` (1-based `k`) with `v_μ`, keeping the degree of
    /// `w(k)`. Used to probe the verifier with a broken model.
    pub fn with_odd_differential(mut self, k: usize, mu: Face) -> Self {
        let i = self.num_even() + k - 1;
        self.differential[i] = Polynomial::of_face(self.labels.len(), mu);
        self
    }

    /// `d² = 0` holds when every even generator is a cycle and every odd
    /// differential is a homogeneous polynomial in even generators of the
    /// right degree.
    pub fn check_square_zero(&self) -> bool {
        self.generators
            .iter()
            .zip(&self.differential)
            .all(|(g, d)| {
                if g.odd {
                    d.degree().is_none_or(|deg| 2 * deg == g.degree + 1)
                } else {
                    d.is_zero()
                }
            })
    }
}

impl fmt::Display for SullivanModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, d) in self.generators.iter().zip(&self.differential) {
            writeln!(
                f,
                "{} (degree {}): d = {}",
                g.name,
                g.degree,
                d.format(&self.labels)
            )?;
        }
        Ok(())
    }
}

/// Vertices in degree 2 with zero differential; `w(k)` in degree
/// `2n(k) - 1` with `dw(k) = v_{λ(k)}`.
pub fn minimal_model(p: &CIPresentation) -> SullivanModel {
    let labels = p.complex.labels().to_vec();
    let m = labels.len();
    let mut generators: Vec<Generator> = labels
        .iter()
        .map(|l| Generator {
            name: l.clone(),
            degree: 2,
            odd: false,
        })
        .collect();
    let mut differential = vec![Polynomial::default(); m];
    for (k, lam) in p.lambdas.iter().enumerate() {
        generators.push(Generator {
            name: format!("w{}", k + 1),
            degree: 2 * lam.len() as u32 - 1,
            odd: true,
        });
        differential.push(Polynomial::of_face(m, *lam));
    }
    SullivanModel {
        labels,
        generators,
        differential,
    }
}

/// A degree where the model's cohomology and the face ring disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulWitness {
    pub degree: u32,
    pub found: usize,
    pub expected: usize,
}

/// Model cohomology dimensions in topological degrees `0..=cutoff`, checked
/// against the face ring of the presentation's complex.
pub fn koszul_cohomology_check(
    p: &CIPresentation,
    cutoff: u32,
) -> Result<Vec<usize>, KoszulWitness> {
    koszul_check_model(&minimal_model(p), &p.complex, cutoff)
}

/// Same check for an arbitrary model of the shape produced by
/// [`minimal_model`].
pub fn koszul_check_model(
    model: &SullivanModel,
    target: &SimplicialComplex,
    cutoff: u32,
) -> Result<Vec<usize>, KoszulWitness> {
    let algebra = StanleyReisnerAlgebra::new(target.clone(), Q);
    let dims = model_cohomology(model, cutoff);
    for (q, &found) in dims.iter().enumerate() {
        let q = q as u32;
        let expected = if q.is_multiple_of(2) {
            algebra.hilbert_function(q / 2) as usize
        } else {
            0
        };
        if found != expected {
            return Err(KoszulWitness {
                degree: q,
                found,
                expected,
            });
        }
    }
    Ok(dims)
}

/// Basis of the degree-`q` piece: a monomial in the even generators times
/// a set of odd generators.
fn koszul_basis(model: &SullivanModel, q: u32) -> Vec<(MultiSet, Vec<usize>)> {
    let m = model.num_even();
    let odd_degrees: Vec<u32> = model.generators[m..].iter().map(|g| g.degree).collect();
    let t = odd_degrees.len();
    let all = Face::from_indices(0..m);
    let mut out = Vec::new();
    for mask in 0u32..(1 << t) {
        let set: Vec<usize> = (0..t).filter(|k| mask & (1 << k) != 0).collect();
        let odd: u32 = set.iter().map(|&k| odd_degrees[k]).sum();
        if odd > q || !(q - odd).is_multiple_of(2) {
            continue;
        }
        for mono in MultiSet::all_within(m, all, (q - odd) / 2) {
            out.push((mono, set.clone()));
        }
    }
    out
}

/// Matrix of `d` from degree `q` to degree `q + 1`.
fn koszul_differential(model: &SullivanModel, q: u32) -> ExactMatrix {
    let src = koszul_basis(model, q);
    let dst = koszul_basis(model, q + 1);
    let index: BTreeMap<&(MultiSet, Vec<usize>), usize> =
        dst.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let odd = model.odd_differentials();
    let mut triplets = Vec::new();
    for (c, (mono, set)) in src.iter().enumerate() {
        for (pos, &k) in set.iter().enumerate() {
            let sign = if pos % 2 == 0 {
                Scalar::one()
            } else {
                -Scalar::one()
            };
            let rest: Vec<usize> = set.iter().copied().filter(|&x| x != k).collect();
            for (term, coeff) in &odd[k].terms {
                let key = (mono.sum(term), rest.clone());
                let r = *index.get(&key).expect("differential has degree +1");
                triplets.push((r, c, &sign * coeff));
            }
        }
    }
    ExactMatrix::from_triplets(Q, dst.len(), src.len(), triplets)
}

/// Cohomology dimensions in degrees `0..=cutoff`.
pub fn model_cohomology(model: &SullivanModel, cutoff: u32) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d_in = ExactMatrix::zeros(Q, 1, 0);
    for q in 0..=cutoff {
        let d_out = koszul_differential(model, q);
        let h = cohomology_at(&d_in, &d_out).expect("d squares to zero");
        out.push(h.free_rank);
        d_in = d_out;
    }
    out
}

/// Compares `Hilb(Q[L]) · (1-t)^m` with `Π_k (1 - t^{n(k)})` through
/// polynomial degree `cutoff / 2` (generators sit in degree 2).
pub fn hilbert_ci_identity(p: &CIPresentation, cutoff: u32) -> Result<(), u32> {
    let top = (cutoff / 2) as usize;
    let algebra = StanleyReisnerAlgebra::new(p.complex.clone(), Q);
    let mut lhs: Vec<i64> = (0..=top)
        .map(|j| algebra.hilbert_function(j as u32) as i64)
        .collect();
    for _ in 0..p.m() {
        for j in (1..=top).rev() {
            lhs[j] -= lhs[j - 1];
        }
    }
    let mut rhs = vec![0i64; top + 1];
    rhs[0] = 1;
    for n in p.sizes() {
        for j in (n..=top).rev() {
            rhs[j] -= rhs[j - n];
        }
    }
    match lhs.iter().zip(&rhs).position(|(a, b)| a != b) {
        Some(j) => Err(j as u32),
        None => Ok(()),
    }
}

/// One emitted automorphism, as the matrix whose column `a` is the image of
/// `v_a` (vertex order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGenerator {
    pub name: String,
    pub matrix: ExactMatrix,
}

/// The block family `(M 0; N Σ)` with respect to the split `V = (V∖λ) ⊔ λ`:
/// `M` invertible on `V∖λ`, `N` arbitrary from `V∖λ` to `λ`, `Σ` permuting
/// inside each `λ(k)` and swapping blocks of equal size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGeneratorSet {
    pub m: usize,
    pub n: usize,
    pub free_vertices: Vec<usize>,
    pub lambdas: Vec<Vec<usize>>,
    /// Order of the admissible permutation group.
    pub permutation_group_order: u64,
    pub generators: Vec<AutGenerator>,
}

/// Why a matrix does not induce an automorphism of `Q[L]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutFailure {
    Shape,
    Singular,
    /// The image of `v_{λ(k)}` is not a nonzero multiple of a relation of
    /// the same size.
    Relation(usize),
}

/// Emits representatives of the generating matrices; every emitted matrix
/// passes [`verify_automorphism`].
pub fn automorphism_generators(p: &CIPresentation) -> AutGeneratorSet {
    let m = p.m();
    let lambda = p.lambdas.iter().fold(Face::EMPTY, |a, b| a.union(*b));
    let free: Vec<usize> = (0..m).filter(|v| !lambda.contains(*v)).collect();
    let lambdas: Vec<Vec<usize>> = p.lambdas.iter().map(|l| l.vertices().collect()).collect();
    let perm_gens = permutation_generators(&lambdas, m);
    let mut generators = Vec::new();
    let name = |v: usize| p.complex.labels()[v].clone();
    for &a in &free {
        generators.push(AutGenerator {
            name: format!("scale {} by 2", name(a)),
            matrix: images(m, |v| vec![(v, if v == a { 2 } else { 1 })]),
        });
    }
    for w in free.windows(2) {
        let (a, b) = (w[0], w[1]);
        generators.push(AutGenerator {
            name: format!("swap {} and {}", name(a), name(b)),
            matrix: images(m, |v| vec![(transpose(v, a, b), 1)]),
        });
        generators.push(AutGenerator {
            name: format!("{0} -> {0} + {1}", name(a), name(b)),
            matrix: images(m, |v| {
                if v == a {
                    vec![(a, 1), (b, 1)]
                } else {
                    vec![(v, 1)]
                }
            }),
        });
    }
    for &a in &free {
        for &c in lambda.vertices().collect::<Vec<_>>().iter() {
            generators.push(AutGenerator {
                name: format!("{0} -> {0} + {1}", name(a), name(c)),
                matrix: images(m, |v| {
                    if v == a {
                        vec![(a, 1), (c, 1)]
                    } else {
                        vec![(v, 1)]
                    }
                }),
            });
        }
    }
    for (label, perm) in perm_gens {
        let label = label
            .iter()
            .map(|(a, b)| format!("({} {})", name(*a), name(*b)))
            .collect::<String>();
        generators.push(AutGenerator {
            name: format!("permute {label}"),
            matrix: images(m, |v| vec![(perm[v], 1)]),
        });
    }
    let order = admissible_permutations(&lambdas, m).len() as u64;
    AutGeneratorSet {
        m,
        n: p.n(),
        free_vertices: free,
        lambdas,
        permutation_group_order: order,
        generators,
    }
}

fn transpose(v: usize, a: usize, b: usize) -> usize {
    if v == a {
        b
    } else if v == b {
        a
    } else {
        v
    }
}

/// Matrix with column `v` given by `(row, coefficient)` pairs.
fn images(m: usize, col: impl Fn(usize) -> Vec<(usize, i64)>) -> ExactMatrix {
    let triplets = (0..m).flat_map(|v| {
        col(v)
            .into_iter()
            .map(move |(r, c)| (r, v, Scalar::from_integer(c.into())))
    });
    ExactMatrix::from_triplets(Q, m, m, triplets)
}

type Cycles = Vec<(usize, usize)>;

/// Transpositions inside each block plus swaps of adjacent equal-size
/// blocks, each as (description, permutation of all `m` vertices).
fn permutation_generators(lambdas: &[Vec<usize>], m: usize) -> Vec<(Cycles, Vec<usize>)> {
    let id: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    for l in lambdas {
        for w in l.windows(2) {
            let mut p = id.clone();
            p.swap(w[0], w[1]);
            out.push((vec![(w[0], w[1])], p));
        }
    }
    for (i, a) in lambdas.iter().enumerate() {
        if let Some(b) = lambdas[i + 1..].iter().find(|b| b.len() == a.len()) {
            let mut p = id.clone();
            for (x, y) in a.iter().zip(b) {
                p.swap(*x, *y);
            }
            out.push((a.iter().copied().zip(b.iter().copied()).collect(), p));
        }
    }
    out
}

/// The group generated by the block permutations, by closure.
pub fn admissible_permutations(lambdas: &[Vec<usize>], m: usize) -> BTreeSet<Vec<usize>> {
    let gens: Vec<Vec<usize>> = permutation_generators(lambdas, m)
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    let id: Vec<usize> = (0..m).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in &gens {
            let gh: Vec<usize> = (0..m).map(|v| g[h[v]]).collect();
            if seen.insert(gh.clone()) {
                queue.push_back(gh);
            }
        }
    }
    seen
}

/// Checks that the linear substitution `v_a ↦ Σ_b A_{ba} v_b` is invertible
/// and sends each relation `v_{λ(k)}` to a nonzero multiple of a relation
/// `v_{λ(k')}` with `n(k') = n(k)`, so it descends to an automorphism of
/// the face ring.
pub fn verify_automorphism(p: &CIPresentation, a: &ExactMatrix) -> Result<(), AutFailure> {
    let m = p.m();
    if a.rows() != m || a.cols() != m || a.domain() != Q {
        return Err(AutFailure::Shape);
    }
    if rank(a) != m {
        return Err(AutFailure::Singular);
    }
    let columns = a.columns();
    for (k, lam) in p.lambdas.iter().enumerate() {
        let image = lam.vertices().fold(
            Polynomial::monomial(MultiSet::empty(m), Scalar::one()),
            |acc, v| acc.mul(&Polynomial::linear(&columns[v])),
        );
        let ok = image.terms.len() == 1 && {
            let (mono, _) = image.terms.iter().next().unwrap();
            p.lambdas
                .iter()
                .any(|l| l.len() == lam.len() && *mono == MultiSet::of_face(m, *l))
        };
        if !ok {
            return Err(AutFailure::Relation(k + 1));
        }
    }
    Ok(())
}
