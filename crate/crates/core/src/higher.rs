//! Derived limits through the cochain complex of flags.
//!
//! Level `n` is `∏ D(σ_n)` over flags `σ_0 ⊋ ... ⊋ σ_n` (or weakly
//! decreasing chains for the unnormalized complex), and the coboundary is
//! `δ = Σ_{k=0}^{n+1} (-1)^k δ^k`: `δ^k` omits `σ_k` for `k ≤ n`, and
//! `δ^{n+1}` applies `D(p_{σ_n,σ_{n+1}})` to the value on `σ_0 ⊇ ... ⊇ σ_n`.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use crate::diagram::{exp_cohomology_diagram, FaceDiagram};
use crate::linalg::{rank_and_torsion, CoefficientDomain, ExactMatrix, ModuleSummary, Scalar};
use crate::simplicial::{Face, SimplicialComplex};
use crate::stanley_reisner::StanleyReisnerAlgebra;

/// One level of the cochain complex.
#[derive(Clone, Debug)]
pub struct CochainLevel {
    pub n: usize,
    /// Chains of face positions, in lexicographic order.
    pub flags: Vec<Vec<usize>>,
    /// Start of each flag's block; blocks have the dimension of the value at
    /// the flag's last face.
    pub offsets: Vec<usize>,
    pub dim: usize,
    index: HashMap<Vec<usize>, usize>,
}

impl CochainLevel {
    /// The flags as faces.
    pub fn face_flags(&self, complex: &SimplicialComplex) -> Vec<Vec<Face>> {
        self.flags
            .iter()
            .map(|c| c.iter().map(|&i| complex.faces()[i]).collect())
            .collect()
    }
}

/// Lazily grown tower of cochain levels for one diagram.
pub struct Cochains<'a> {
    diagram: &'a FaceDiagram,
    below: Vec<Vec<usize>>,
    levels: Vec<CochainLevel>,
}

impl<'a> Cochains<'a> {
    /// Normalized (`strict`) or unnormalized cochains.
    pub fn new(diagram: &'a FaceDiagram, strict: bool) -> Self {
        let below = diagram.complex().subface_lists(strict);
        let level0 = Self::make_level(diagram, 0, (0..below.len()).map(|i| vec![i]).collect());
        Cochains {
            diagram,
            below,
            levels: vec![level0],
        }
    }

    fn make_level(d: &FaceDiagram, n: usize, flags: Vec<Vec<usize>>) -> CochainLevel {
        let mut offsets = Vec::with_capacity(flags.len());
        let mut dim = 0;
        for f in &flags {
            offsets.push(dim);
            dim += d.dim_at(*f.last().expect("flags are nonempty"));
        }
        let index = flags
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        CochainLevel {
            n,
            flags,
            offsets,
            dim,
            index,
        }
    }

    pub fn level(&mut self, n: usize) -> &CochainLevel {
        while self.levels.len() <= n {
            let last = self.levels.last().unwrap();
            let mut next = Vec::new();
            for f in &last.flags {
                for &s in &self.below[*f.last().unwrap()] {
                    let mut g = f.clone();
                    g.push(s);
                    next.push(g);
                }
            }
            let lvl = Self::make_level(self.diagram, last.n + 1, next);
            self.levels.push(lvl);
        }
        &self.levels[n]
    }

    /// The matrix of `δ: C^n → C^{n+1}`.
    pub fn coboundary(&mut self, n: usize) -> ExactMatrix {
        self.level(n + 1);
        let d = self.diagram;
        let domain = d.domain();
        let (src, dst) = (&self.levels[n], &self.levels[n + 1]);
        let one = Scalar::one();
        let mut triplets = Vec::new();
        for (row_flag, chain) in dst.flags.iter().enumerate() {
            let r0 = dst.offsets[row_flag];
            let last = chain[n + 1];
            let width = d.dim_at(last);
            if width == 0 {
                continue;
            }
            let mut shorter = Vec::with_capacity(n + 1);
            for k in 0..=n + 1 {
                shorter.clear();
                shorter.extend(
                    chain
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != k)
                        .map(|(_, v)| *v),
                );
                let c = src.index[&shorter];
                let c0 = src.offsets[c];
                let sign = if k % 2 == 0 {
                    one.clone()
                } else {
                    -one.clone()
                };
                if k <= n {
                    for i in 0..width {
                        triplets.push((r0 + i, c0 + i, sign.clone()));
                    }
                } else {
                    let p = d.map_at(chain[n], last);
                    for (i, row) in p.sparse_rows().iter().enumerate() {
                        for (j, v) in row {
                            triplets.push((r0 + i, c0 + j, &sign * v));
                        }
                    }
                }
            }
        }
        ExactMatrix::from_triplets(domain, dst.dim, src.dim, triplets)
    }

    /// `lim^i` for `i = 0..=i_max`, each coboundary eliminated once.
    pub fn cohomology(&mut self, i_max: usize) -> Vec<ModuleSummary> {
        let mut out = Vec::with_capacity(i_max + 1);
        let (mut prev_rank, mut prev_torsion) = (0usize, Vec::new());
        for i in 0..=i_max {
            let dim = self.level(i).dim;
            if dim == 0 {
                out.push(ModuleSummary::zero());
                prev_rank = 0;
                prev_torsion = Vec::new();
                continue;
            }
            let (r, t) = rank_and_torsion(&self.coboundary(i));
            out.push(ModuleSummary {
                free_rank: dim - r - prev_rank,
                torsion: prev_torsion,
            });
            prev_rank = r;
            prev_torsion = t;
        }
        out
    }
}

/// Matrix of the normalized coboundary `N^n → N^{n+1}`.
pub fn coboundary(d: &FaceDiagram, n: usize) -> ExactMatrix {
    Cochains::new(d, true).coboundary(n)
}

/// Matrix of the unnormalized coboundary `C^n → C^{n+1}`.
pub fn unnormalized_coboundary(d: &FaceDiagram, n: usize) -> ExactMatrix {
    Cochains::new(d, false).coboundary(n)
}

pub fn higher_limit(d: &FaceDiagram, i: usize) -> ModuleSummary {
    higher_limits(d, i).pop().expect("at least one degree")
}

/// `lim^0 .. lim^{i_max}` from the normalized complex.
pub fn higher_limits(d: &FaceDiagram, i_max: usize) -> Vec<ModuleSummary> {
    Cochains::new(d, true).cohomology(i_max)
}

/// `lim^0 .. lim^{i_max}` from the unnormalized complex.
pub fn unnormalized_higher_limits(d: &FaceDiagram, i_max: usize) -> Vec<ModuleSummary> {
    Cochains::new(d, false).cohomology(i_max)
}

/// The page `E_2^{i,q} = lim^i H^q`, indexed by topological degree `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Table {
    pub domain: CoefficientDomain,
    pub i_max: usize,
    /// Largest polynomial degree; rows run over `q = 0..=2 j_max`.
    pub j_max: u32,
    pub entries: BTreeMap<(usize, u32), ModuleSummary>,
}

impl E2Table {
    pub fn get(&self, i: usize, q: u32) -> Option<&ModuleSummary> {
        self.entries.get(&(i, q))
    }
}

/// Tabulates `lim^i` of the exponential cohomology diagrams; odd rows are
/// zero because those diagrams vanish.
pub fn bk_e2_table(
    k: &SimplicialComplex,
    domain: CoefficientDomain,
    i_max: usize,
    j_max: u32,
) -> E2Table {
    let mut entries = BTreeMap::new();
    for j in 0..=j_max {
        let d = exp_cohomology_diagram(k, j, domain).contra;
        for (i, s) in higher_limits(&d, i_max).into_iter().enumerate() {
            entries.insert((i, 2 * j), s);
            if j < j_max {
                entries.insert((i, 2 * j + 1), ModuleSummary::zero());
            }
        }
    }
    E2Table {
        domain,
        i_max,
        j_max,
        entries,
    }
}

/// A cell of the page that breaks collapse onto the vertical axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessWitness {
    pub i: usize,
    pub q: u32,
    pub found: ModuleSummary,
    pub expected: ModuleSummary,
}

/// Passes when every `i > 0` entry vanishes and the `i = 0` column is free
/// of rank equal to the Hilbert function.
pub fn verify_sharpness(
    k: &SimplicialComplex,
    domain: CoefficientDomain,
    i_max: usize,
    j_max: u32,
) -> Result<E2Table, SharpnessWitness> {
    let table = bk_e2_table(k, domain, i_max, j_max);
    check_table(k, &table)?;
    Ok(table)
}

pub(crate) fn check_table(k: &SimplicialComplex, table: &E2Table) -> Result<(), SharpnessWitness> {
    let algebra = StanleyReisnerAlgebra::new(k.clone(), table.domain);
    for ((i, q), found) in &table.entries {
        let expected = if *i == 0 && q % 2 == 0 {
            ModuleSummary::free(algebra.hilbert_function(q / 2) as usize)
        } else {
            ModuleSummary::zero()
        };
        if *found != expected {
            return Err(SharpnessWitness {
                i: *i,
                q: *q,
                found: found.clone(),
                expected,
            });
        }
    }
    Ok(())
}
