//! Contravariant diagrams of based free modules over the face poset.
//!
//! A [`FaceDiagram`] assigns a free module with a labeled basis to every
//! face and a matrix `D(p_{τ,σ}): D(τ) → D(σ)` to every pair `τ ⊇ σ`.
//! Maps are stored for all comparable pairs, not just covers.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::higher;
use crate::linalg::{is_surjective, kernel_basis, solve, CoefficientDomain, ExactMatrix, Scalar};
use crate::simplicial::{Face, MultiSet, SimplicialComplex};

/// A compatible family: one vector per face.
pub type Family = BTreeMap<Face, Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDiagram {
    complex: SimplicialComplex,
    domain: CoefficientDomain,
    bases: Vec<Vec<String>>,
    /// Keyed by face positions `(τ, σ)` with `σ ⊆ τ`.
    maps: HashMap<(usize, usize), ExactMatrix>,
}

/// Why a diagram fails to be a functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorialityWitness {
    /// The map on `(σ, σ)` is not the identity.
    NotIdentity(Face),
    /// `D(p_{ρ,σ}) · D(p_{τ,ρ}) ≠ D(p_{τ,σ})` for the chain `τ ⊃ ρ ⊃ σ`.
    Composite(Face, Face, Face),
}

/// Why a pair of diagrams fails to be twins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwinWitness {
    /// The contravariant half is not a functor.
    Functoriality(FunctorialityWitness),
    /// `D^K(p_{τ,σ}) · D_K(i_{σ,τ}) ≠ 1`.
    Retraction { sigma: Face, tau: Face },
    /// The square through `τ ⊇ σ, σ'` and `σ ∩ σ'` does not commute.
    Square {
        tau: Face,
        sigma: Face,
        sigma_prime: Face,
    },
}

impl FaceDiagram {
    /// Builds a diagram from a basis per face and a map for every pair
    /// `τ ⊋ σ`. Shapes and domains are checked; functoriality is not.
    pub fn new(
        complex: SimplicialComplex,
        domain: CoefficientDomain,
        bases: Vec<Vec<String>>,
        mut map_of: impl FnMut(Face, Face) -> ExactMatrix,
    ) -> Result<Self, Error> {
        if bases.len() != complex.num_faces() {
            return Err(Error::MalformedDiagram(format!(
                "{} bases for {} faces",
                bases.len(),
                complex.num_faces()
            )));
        }
        let mut maps = HashMap::new();
        let subs = complex.subface_lists(false);
        for (t, below) in subs.iter().enumerate() {
            for &s in below {
                let m = if s == t {
                    ExactMatrix::identity(domain, bases[t].len())
                } else {
                    map_of(complex.faces()[t], complex.faces()[s])
                };
                check_map(&complex, domain, &bases, t, s, &m)?;
                maps.insert((t, s), m);
            }
        }
        Ok(FaceDiagram {
            complex,
            domain,
            bases,
            maps,
        })
    }

    /// Rank one everywhere, identity maps.
    pub fn constant(complex: SimplicialComplex, domain: CoefficientDomain) -> Self {
        let bases = vec![vec!["1".to_string()]; complex.num_faces()];
        Self::new(complex, domain, bases, |_, _| {
            ExactMatrix::identity(domain, 1)
        })
        .expect("constant diagram is well formed")
    }

    /// Zero everywhere.
    pub fn zero(complex: SimplicialComplex, domain: CoefficientDomain) -> Self {
        let bases = vec![Vec::new(); complex.num_faces()];
        Self::new(complex, domain, bases, |_, _| {
            ExactMatrix::zeros(domain, 0, 0)
        })
        .expect("zero diagram is well formed")
    }

    /// Free of the given rank at `mu`, zero at every other face.
    pub fn atomic(
        complex: SimplicialComplex,
        domain: CoefficientDomain,
        mu: Face,
        rank: usize,
    ) -> Result<Self, Error> {
        let pos = complex
            .face_index(mu)
            .ok_or_else(|| Error::NotAFace(complex.format_face(mu)))?;
        let mut bases = vec![Vec::new(); complex.num_faces()];
        bases[pos] = (1..=rank).map(|i| format!("e{i}")).collect();
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let c = complex.clone();
        Self::new(complex, domain, bases, move |t, s| {
            let (t, s) = (c.face_index(t).unwrap(), c.face_index(s).unwrap());
            ExactMatrix::zeros(domain, dims[s], dims[t])
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn basis(&self, face: Face) -> Option<&[String]> {
        self.complex
            .face_index(face)
            .map(|i| self.bases[i].as_slice())
    }

    pub fn dim(&self, face: Face) -> Option<usize> {
        self.basis(face).map(<[String]>::len)
    }

    pub(crate) fn dim_at(&self, pos: usize) -> usize {
        self.bases[pos].len()
    }

    /// `D(p_{τ,σ})` for `σ ⊆ τ`, both faces.
    pub fn map(&self, tau: Face, sigma: Face) -> Option<&ExactMatrix> {
        let t = self.complex.face_index(tau)?;
        let s = self.complex.face_index(sigma)?;
        self.maps.get(&(t, s))
    }

    pub(crate) fn map_at(&self, t: usize, s: usize) -> &ExactMatrix {
        &self.maps[&(t, s)]
    }

    /// Replaces one structure map, keeping shapes honest.
    pub fn with_map(mut self, tau: Face, sigma: Face, m: ExactMatrix) -> Result<Self, Error> {
        let t = self
            .complex
            .face_index(tau)
            .ok_or_else(|| Error::NotAFace(self.complex.format_face(tau)))?;
        let s = self
            .complex
            .face_index(sigma)
            .ok_or_else(|| Error::NotAFace(self.complex.format_face(sigma)))?;
        if !sigma.is_subset(tau) {
            return Err(Error::MalformedDiagram(format!(
                "{} is not contained in {}",
                self.complex.format_face(sigma),
                self.complex.format_face(tau)
            )));
        }
        check_map(&self.complex, self.domain, &self.bases, t, s, &m)?;
        self.maps.insert((t, s), m);
        Ok(self)
    }

    /// The same diagram over another domain; entries are reduced mod `p`
    /// for prime fields and must be integral unless the target is `Q`.
    pub fn change_domain(&self, domain: CoefficientDomain) -> Self {
        FaceDiagram {
            complex: self.complex.clone(),
            domain,
            bases: self.bases.clone(),
            maps: self
                .maps
                .iter()
                .map(|(k, m)| (*k, m.change_domain(domain)))
                .collect(),
        }
    }

    /// Restriction to a subcomplex on the same vertex set.
    pub fn restrict(&self, sub: &SimplicialComplex) -> Result<Self, Error> {
        if sub.labels() != self.complex.labels() {
            return Err(Error::ComplexMismatch);
        }
        if let Some(f) = sub.faces().iter().find(|f| !self.complex.contains(**f)) {
            return Err(Error::NotAFace(self.complex.format_face(*f)));
        }
        let bases = sub
            .faces()
            .iter()
            .map(|f| self.bases[self.complex.face_index(*f).unwrap()].clone())
            .collect();
        Self::new(sub.clone(), self.domain, bases, |t, s| {
            self.map(t, s).expect("subcomplex faces exist").clone()
        })
    }

    /// Checks identities and every composite along `τ ⊃ ρ ⊃ σ`.
    pub fn validate_functoriality(&self) -> Result<(), FunctorialityWitness> {
        let faces = self.complex.faces();
        for (i, f) in faces.iter().enumerate() {
            if self.map_at(i, i) != &ExactMatrix::identity(self.domain, self.dim_at(i)) {
                return Err(FunctorialityWitness::NotIdentity(*f));
            }
        }
        let below = self.complex.subface_lists(true);
        for (t, mids) in below.iter().enumerate() {
            for &r in mids {
                for &s in &below[r] {
                    let via = self
                        .map_at(r, s)
                        .mul(self.map_at(t, r))
                        .expect("shapes were checked");
                    if &via != self.map_at(t, s) {
                        return Err(FunctorialityWitness::Composite(
                            faces[t], faces[r], faces[s],
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Offsets of each face's block inside `∏_σ D(σ)`, plus the total.
    pub(crate) fn offsets(&self) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.bases.len());
        let mut total = 0;
        for b in &self.bases {
            offsets.push(total);
            total += b.len();
        }
        (offsets, total)
    }
}

fn check_map(
    complex: &SimplicialComplex,
    domain: CoefficientDomain,
    bases: &[Vec<String>],
    t: usize,
    s: usize,
    m: &ExactMatrix,
) -> Result<(), Error> {
    let want = (bases[s].len(), bases[t].len());
    if (m.rows(), m.cols()) != want {
        return Err(Error::MalformedDiagram(format!(
            "map {} -> {} is {}x{}, expected {}x{}",
            complex.format_face(complex.faces()[t]),
            complex.format_face(complex.faces()[s]),
            m.rows(),
            m.cols(),
            want.0,
            want.1
        )));
    }
    if m.domain() != domain {
        return Err(Error::DomainMismatch(domain, m.domain()));
    }
    Ok(())
}

/// A contravariant diagram with a covariant partner on the same bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPair {
    pub contra: FaceDiagram,
    /// `D_K(i_{σ,τ})`, keyed by face positions `(σ, τ)` with `σ ⊆ τ`.
    co: HashMap<(usize, usize), ExactMatrix>,
}

impl TwinPair {
    pub fn new(
        contra: FaceDiagram,
        mut co_of: impl FnMut(Face, Face) -> ExactMatrix,
    ) -> Result<Self, Error> {
        let k = contra.complex.clone();
        let mut co = HashMap::new();
        for (t, below) in k.subface_lists(false).iter().enumerate() {
            for &s in below {
                let m = if s == t {
                    ExactMatrix::identity(contra.domain, contra.dim_at(t))
                } else {
                    co_of(k.faces()[s], k.faces()[t])
                };
                // An inclusion map has the transposed shape of a projection.
                check_map(&k, contra.domain, &contra.bases, s, t, &m)?;
                co.insert((s, t), m);
            }
        }
        Ok(TwinPair { contra, co })
    }

    /// `D_K(i_{σ,τ})` for `σ ⊆ τ`.
    pub fn co_map(&self, sigma: Face, tau: Face) -> Option<&ExactMatrix> {
        let k = &self.contra.complex;
        self.co.get(&(k.face_index(sigma)?, k.face_index(tau)?))
    }

    fn co_at(&self, s: usize, t: usize) -> &ExactMatrix {
        &self.co[&(s, t)]
    }

    pub fn with_co_map(mut self, sigma: Face, tau: Face, m: ExactMatrix) -> Result<Self, Error> {
        let k = &self.contra.complex;
        let (Some(s), Some(t)) = (k.face_index(sigma), k.face_index(tau)) else {
            return Err(Error::NotAFace(format!("{sigma:?} or {tau:?}")));
        };
        if !self.co.contains_key(&(s, t)) {
            return Err(Error::MalformedDiagram(format!(
                "{sigma:?} is not contained in {tau:?}"
            )));
        }
        check_map(k, self.contra.domain, &self.contra.bases, s, t, &m)?;
        self.co.insert((s, t), m);
        Ok(self)
    }

    /// Checks functoriality, the retractions `p · i = 1`, and the square
    /// `p_{τ,σ'} · i_{σ,τ} = i_{σ∩σ',σ'} · p_{σ,σ∩σ'}` for all `σ, σ' ⊆ τ`.
    pub fn validate_twin(&self) -> Result<(), TwinWitness> {
        self.contra
            .validate_functoriality()
            .map_err(TwinWitness::Functoriality)?;
        let k = &self.contra.complex;
        let faces = k.faces();
        for (t, below) in k.subface_lists(false).iter().enumerate() {
            for &s in below {
                let id = ExactMatrix::identity(self.contra.domain, self.contra.dim_at(s));
                let round = self.contra.map_at(t, s).mul(self.co_at(s, t)).unwrap();
                if round != id {
                    return Err(TwinWitness::Retraction {
                        sigma: faces[s],
                        tau: faces[t],
                    });
                }
            }
            for &s in below {
                for &s2 in below {
                    if s == s2 {
                        continue;
                    }
                    let meet = k.face_index(faces[s].intersection(faces[s2])).unwrap();
                    let lhs = self.contra.map_at(t, s2).mul(self.co_at(s, t)).unwrap();
                    let rhs = self
                        .co_at(meet, s2)
                        .mul(self.contra.map_at(s, meet))
                        .unwrap();
                    if lhs != rhs {
                        return Err(TwinWitness::Square {
                            tau: faces[t],
                            sigma: faces[s],
                            sigma_prime: faces[s2],
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// The diagram `σ ↦ {degree-j monomials supported in σ}` with projections
/// that keep a monomial when its support survives and kill it otherwise;
/// the partner maps are basis inclusions.
pub fn exp_cohomology_diagram(
    complex: &SimplicialComplex,
    j: u32,
    domain: CoefficientDomain,
) -> TwinPair {
    let m = complex.num_vertices();
    let monos: Vec<Vec<MultiSet>> = complex
        .faces()
        .iter()
        .map(|f| MultiSet::all_within(m, *f, j))
        .collect();
    let bases = monos
        .iter()
        .map(|ms| ms.iter().map(|x| x.monomial(complex.labels())).collect())
        .collect();
    // Basis of σ as a sublist of the basis of τ.
    let embed = |small: &[MultiSet], big: &[MultiSet]| -> Vec<(usize, usize)> {
        small
            .iter()
            .enumerate()
            .map(|(i, x)| (i, big.binary_search(x).expect("support inclusion")))
            .collect()
    };
    let pos = |f: Face| complex.face_index(f).unwrap();
    let contra = FaceDiagram::new(complex.clone(), domain, bases, |t, s| {
        let (mt, ms) = (&monos[pos(t)], &monos[pos(s)]);
        ExactMatrix::from_triplets(
            domain,
            ms.len(),
            mt.len(),
            embed(ms, mt)
                .into_iter()
                .map(|(r, c)| (r, c, Scalar::one())),
        )
    })
    .expect("exponential diagram is well formed");
    TwinPair::new(contra, |s, t| {
        let (ms, mt) = (&monos[pos(s)], &monos[pos(t)]);
        ExactMatrix::from_triplets(
            domain,
            mt.len(),
            ms.len(),
            embed(ms, mt)
                .into_iter()
                .map(|(c, r)| (r, c, Scalar::one())),
        )
    })
    .expect("exponential twin is well formed")
}

/// The limit as a submodule of `∏_σ D(σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitModule {
    pub faces: Vec<Face>,
    pub offsets: Vec<usize>,
    pub dims: Vec<usize>,
    /// Columns span the limit: a basis over a field, a lattice basis over Z.
    pub basis: ExactMatrix,
}

impl LimitModule {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Splits an ambient vector into its per-face components.
    pub fn split(&self, v: &[Scalar]) -> Family {
        self.faces
            .iter()
            .enumerate()
            .map(|(i, f)| {
                (
                    *f,
                    v[self.offsets[i]..self.offsets[i] + self.dims[i]].to_vec(),
                )
            })
            .collect()
    }

    /// Component family of basis column `c`.
    pub fn family(&self, c: usize) -> Family {
        self.split(&self.basis.column(c))
    }
}

/// Compatible families `u(σ) = D(p_{τ,σ}) u(τ)`, computed as the kernel of
/// the first coboundary.
pub fn limit(d: &FaceDiagram) -> LimitModule {
    let (offsets, _) = d.offsets();
    let delta = higher::coboundary(d, 0);
    LimitModule {
        faces: d.complex.faces().to_vec(),
        dims: (0..d.bases.len()).map(|i| d.dim_at(i)).collect(),
        offsets,
        basis: kernel_basis(&delta),
    }
}

/// The map `D(σ) → lim D|∂σ` as a matrix into coordinates of the limit's
/// basis, together with that limit.
fn boundary_comparison(d: &FaceDiagram, sigma: Face) -> (LimitModule, ExactMatrix) {
    let k = &d.complex;
    let bd = k.boundary_of_face(sigma);
    let restricted = d.restrict(&bd).expect("boundary is a subcomplex");
    let lim = limit(&restricted);
    let s = k.face_index(sigma).unwrap();
    let blocks: Vec<ExactMatrix> = bd
        .faces()
        .iter()
        .map(|f| d.map_at(s, k.face_index(*f).unwrap()).clone())
        .collect();
    let stacked = vstack(d.domain, d.dim_at(s), &blocks);
    let coords = solve(&lim.basis, &stacked)
        .expect("shapes agree")
        .expect("projections of a functorial diagram are compatible");
    (lim, coords)
}

/// First face (in face order) where `D(σ) → lim D|∂σ` is not onto.
pub fn is_fat(d: &FaceDiagram) -> Result<(), Face> {
    for &sigma in d.complex.faces() {
        let (_, coords) = boundary_comparison(d, sigma);
        if !is_surjective(&coords) {
            return Err(sigma);
        }
    }
    Ok(())
}

/// An explicit lift of a compatible family on `∂ρ` to `D(ρ)`:
/// `u(ρ) = Σ_{σ ⊊ ρ} (-1)^{|ρ∖σ|+1} D_K(i_{σ,ρ}) u(σ)`.
pub fn fat_splitting(t: &TwinPair, rho: Face, u: &Family) -> Result<Vec<Scalar>, Error> {
    let d = &t.contra;
    let k = &d.complex;
    let r = k
        .face_index(rho)
        .ok_or_else(|| Error::NotAFace(k.format_face(rho)))?;
    if rho.is_empty() {
        return Err(Error::EmptyFaceSplitting);
    }
    let domain = d.domain;
    let bd: Vec<Face> = rho.subsets().filter(|s| *s != rho).collect();
    for s in &bd {
        let v = u.get(s).ok_or_else(|| {
            Error::IncompatibleFamily(format!("no value at {}", k.format_face(*s)))
        })?;
        if v.len() != d.dim(*s).unwrap() || !v.iter().all(|x| domain.contains(x)) {
            return Err(Error::IncompatibleFamily(format!(
                "value at {} has the wrong shape or domain",
                k.format_face(*s)
            )));
        }
    }
    for tau in &bd {
        for sigma in tau.subsets().filter(|s| s != tau) {
            let image = d.map(*tau, sigma).unwrap().apply(&u[tau])?;
            if image != u[&sigma] {
                return Err(Error::IncompatibleFamily(format!(
                    "{} does not restrict to {}",
                    k.format_face(*tau),
                    k.format_face(sigma)
                )));
            }
        }
    }
    let mut total = vec![Scalar::zero(); d.dim_at(r)];
    for s in &bd {
        let lifted = t.co_at(k.face_index(*s).unwrap(), r).apply(&u[s])?;
        let negative = rho.difference(*s).len().is_multiple_of(2);
        for (acc, x) in total.iter_mut().zip(lifted) {
            *acc = if negative { &*acc - x } else { &*acc + x };
        }
    }
    Ok(total.into_iter().map(|x| domain.normalize(x)).collect())
}

/// Extends a diagram on `J = K ∖ {μ}` to `K`, with `lim dJ|∂μ` at `μ` and
/// the limit projections as structure maps out of `μ`.
pub fn right_kan_extension(
    dj: &FaceDiagram,
    k: &SimplicialComplex,
    mu: Face,
) -> Result<FaceDiagram, Error> {
    let j = k.delete_maximal(mu)?;
    if &j != dj.complex() {
        return Err(Error::ComplexMismatch);
    }
    let bd = k.boundary_of_face(mu);
    let lim = limit(&dj.restrict(&bd)?);
    let domain = dj.domain;
    let mu_basis: Vec<String> = (1..=lim.rank()).map(|i| format!("l{i}")).collect();
    let bases: Vec<Vec<String>> = k
        .faces()
        .iter()
        .map(|f| {
            if *f == mu {
                mu_basis.clone()
            } else {
                dj.basis(*f).unwrap().to_vec()
            }
        })
        .collect();
    FaceDiagram::new(k.clone(), domain, bases, |t, s| {
        if t == mu {
            let i = bd.face_index(s).unwrap();
            lim.basis
                .select_rows(&(lim.offsets[i]..lim.offsets[i] + lim.dims[i]).collect::<Vec<_>>())
        } else {
            dj.map(t, s).unwrap().clone()
        }
    })
}

fn vstack(domain: CoefficientDomain, cols: usize, blocks: &[ExactMatrix]) -> ExactMatrix {
    let mut triplets = Vec::new();
    let mut row = 0;
    for b in blocks {
        for (r, entries) in b.sparse_rows().iter().enumerate() {
            for (c, v) in entries {
                triplets.push((row + r, *c, v.clone()));
            }
        }
        row += b.rows();
    }
    ExactMatrix::from_triplets(domain, row, cols, triplets)
}
