//! Test inputs: exhaustive small complexes, a few named ones, seeded random
//! complexes, and random functorial diagrams.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{FaceDiagram, LimitModule};
use crate::linalg::{CoefficientDomain, ExactMatrix, Scalar};
use crate::simplicial::{Face, SimplicialComplex};

/// Seed used for every corpus-level random choice.
pub const CORPUS_SEED: u64 = 0x5eed_2024;

pub fn labels(m: usize) -> Vec<String> {
    (1..=m).map(|i| i.to_string()).collect()
}

fn from_facets(m: usize, facets: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::generated_by(
        labels(m),
        facets
            .iter()
            .map(|f| Face::from_indices(f.iter().map(|v| v - 1))),
    )
}

/// Every down-closed family containing `∅` on the labels `1..=m`, in a
/// fixed order. Vertices need not be faces.
pub fn all_complexes(m: usize) -> Vec<SimplicialComplex> {
    let mut subsets: Vec<Face> = (1u32..(1 << m)).map(Face::from_bits).collect();
    subsets.sort_by_key(|f| (f.len(), *f));
    let mut out = Vec::new();
    let mut chosen = vec![Face::EMPTY];
    fn rec(
        subsets: &[Face],
        i: usize,
        chosen: &mut Vec<Face>,
        m: usize,
        out: &mut Vec<SimplicialComplex>,
    ) {
        if i == subsets.len() {
            out.push(SimplicialComplex::generated_by(
                labels(m),
                chosen.iter().copied(),
            ));
            return;
        }
        let s = subsets[i];
        rec(subsets, i + 1, chosen, m, out);
        if s.vertices().all(|v| chosen.contains(&s.without(v))) {
            chosen.push(s);
            rec(subsets, i + 1, chosen, m, out);
            chosen.pop();
        }
    }
    rec(&subsets, 0, &mut chosen, m, &mut out);
    out
}

/// Named complexes with their conventional names.
pub fn named() -> Vec<(String, SimplicialComplex)> {
    vec![
        (
            "triangle-boundary".into(),
            from_facets(3, &[&[1, 2], &[2, 3], &[1, 3]]),
        ),
        (
            "4-cycle".into(),
            from_facets(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]),
        ),
        (
            "5-cycle".into(),
            from_facets(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]]),
        ),
        (
            "two-disjoint-edges".into(),
            from_facets(4, &[&[1, 2], &[3, 4]]),
        ),
        ("triangle".into(), from_facets(3, &[&[1, 2, 3]])),
    ]
}

/// A complex on `m` labeled vertices generated by one to five random faces
/// of size one to four.
pub fn random_complex<R: Rng>(rng: &mut R, m: usize) -> SimplicialComplex {
    let count = rng.gen_range(1..=5);
    let verts: Vec<usize> = (0..m).collect();
    let gens: Vec<Face> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=4.min(m));
            Face::from_indices(verts.choose_multiple(rng, size).copied())
        })
        .collect();
    SimplicialComplex::generated_by(labels(m), gens)
}

/// `count` random complexes on five or six vertices, from a fixed seed.
pub fn random_complexes(count: usize) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(5..=6);
            random_complex(&mut rng, m)
        })
        .collect()
}

/// The full acceptance corpus: everything on at most four vertices, the
/// named complexes, and fifty random ones.
pub fn acceptance_corpus() -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    for m in 0..=4 {
        for (i, k) in all_complexes(m).into_iter().enumerate() {
            out.push((format!("all{m}-{i:03}"), k));
        }
    }
    out.extend(named());
    for (i, k) in random_complexes(50).into_iter().enumerate() {
        out.push((format!("random-{i:02}"), k));
    }
    out
}

/// A deterministic generator for a given label, e.g. a complex's name.
pub fn rng_for(tag: &str) -> ChaCha8Rng {
    let h = tag.bytes().fold(CORPUS_SEED, |h, b| {
        h.rotate_left(5) ^ u64::from(b).wrapping_mul(0x9e37_79b9)
    });
    ChaCha8Rng::seed_from_u64(h)
}

/// Which summands a random diagram is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summands {
    /// `R` on an interval `S ⊆ σ ⊆ T` of faces.
    Intervals,
    /// `R` on every face containing `S`.
    Stars,
}

/// A random functorial diagram: a direct sum of rank-one pieces supported
/// on intervals or stars, with map `τ → σ` equal to `s^{|τ∖σ|}` for a
/// per-summand weight `s ∈ {1, -1, 2}`, followed by a random invertible
/// change of basis at every face.
pub fn random_diagram<R: Rng>(
    rng: &mut R,
    k: &SimplicialComplex,
    domain: CoefficientDomain,
    kind: Summands,
) -> FaceDiagram {
    let faces = k.faces();
    let count = rng.gen_range(1..=4);
    let pieces: Vec<(Face, Face, i64)> = (0..count)
        .map(|_| {
            let s = faces[rng.gen_range(0..faces.len())];
            let above: Vec<Face> = faces.iter().copied().filter(|f| s.is_subset(*f)).collect();
            let t = match kind {
                Summands::Intervals => above[rng.gen_range(0..above.len())],
                Summands::Stars => k.vertex_set(),
            };
            let w = [1, -1, 2][rng.gen_range(0..3)];
            (s, t, w)
        })
        .collect();
    let active = |f: Face| -> Vec<usize> {
        (0..pieces.len())
            .filter(|&i| pieces[i].0.is_subset(f) && f.is_subset(pieces[i].1))
            .collect()
    };
    let changes: Vec<(ExactMatrix, ExactMatrix)> = faces
        .iter()
        .map(|f| random_unimodular(rng, domain, active(*f).len()))
        .collect();
    let bases: Vec<Vec<String>> = faces
        .iter()
        .map(|f| active(*f).iter().map(|i| format!("x{}", i + 1)).collect())
        .collect();
    FaceDiagram::new(k.clone(), domain, bases, |t, s| {
        let (at, as_) = (active(t), active(s));
        let raw = ExactMatrix::from_triplets(
            domain,
            as_.len(),
            at.len(),
            as_.iter().enumerate().filter_map(|(r, i)| {
                let c = at.iter().position(|x| x == i)?;
                let w = pieces[*i].2.pow(t.difference(s).len() as u32);
                Some((r, c, Scalar::from_integer(w.into())))
            }),
        );
        let (gs, _) = &changes[k.face_index(s).unwrap()];
        let (_, gt_inv) = &changes[k.face_index(t).unwrap()];
        gs.mul(&raw).unwrap().mul(gt_inv).unwrap()
    })
    .expect("random diagram is well formed")
}

/// A random matrix of determinant ±1 and its inverse, built from
/// elementary operations with small coefficients.
pub fn random_unimodular<R: Rng>(
    rng: &mut R,
    domain: CoefficientDomain,
    n: usize,
) -> (ExactMatrix, ExactMatrix) {
    let mut g = ExactMatrix::identity(domain, n);
    let mut g_inv = ExactMatrix::identity(domain, n);
    if n == 0 {
        return (g, g_inv);
    }
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (e, e_inv) = if i == j {
            let mut e = ExactMatrix::identity(domain, n);
            e = e
                .add(&ExactMatrix::from_triplets(
                    domain,
                    n,
                    n,
                    [(i, i, Scalar::from_integer((-2).into()))],
                ))
                .unwrap();
            (e.clone(), e)
        } else {
            let c: i64 = [1, -1, 2, -2][rng.gen_range(0..4)];
            let add = |c: i64| {
                ExactMatrix::identity(domain, n)
                    .add(&ExactMatrix::from_triplets(
                        domain,
                        n,
                        n,
                        [(i, j, Scalar::from_integer(c.into()))],
                    ))
                    .unwrap()
            };
            (add(c), add(-c))
        };
        g = e.mul(&g).unwrap();
        g_inv = g_inv.mul(&e_inv).unwrap();
    }
    (g, g_inv)
}

/// A random integer combination of the limit's basis columns.
pub fn random_limit_element<R: Rng>(rng: &mut R, lim: &LimitModule) -> Vec<Scalar> {
    let domain = lim.basis.domain();
    let coeffs: Vec<Scalar> = (0..lim.rank())
        .map(|_| Scalar::from_integer(rng.gen_range(-3i64..=3).into()))
        .collect();
    let v = lim.basis.apply(&coeffs).expect("coefficient count matches");
    v.into_iter().map(|x| domain.normalize(x)).collect()
}
