//! The battery of checks run against a single complex.
//!
//! [`plan`] lists independent checks; each [`Check::run`] is pure and
//! deterministic, so a driver may run them in any order or in parallel.

use std::fmt::Write as _;

use crate::corpus::{random_diagram, random_limit_element, rng_for, Summands};
use crate::diagram::{
    exp_cohomology_diagram, fat_splitting, is_fat, limit, right_kan_extension, FaceDiagram,
};
use crate::higher::{higher_limits, unnormalized_higher_limits, verify_sharpness, Cochains};
use crate::linalg::{CoefficientDomain, ModuleSummary};
use crate::rational::{
    automorphism_generators, ci_detect, hilbert_ci_identity, koszul_check_model,
    koszul_cohomology_check, minimal_model, verify_automorphism, CIPresentation, CiDetection,
    NotCiReason,
};
use crate::simplicial::{Face, SimplicialComplex};
use crate::stanley_reisner::edge_iso_check;

pub const DOMAINS: [CoefficientDomain; 4] = [
    CoefficientDomain::Rationals,
    CoefficientDomain::PrimeField(2),
    CoefficientDomain::PrimeField(3),
    CoefficientDomain::Integers,
];

/// Default bounds for the battery.
pub const I_MAX: usize = 5;
pub const J_MAX: u32 = 3;
pub const EDGE_J_MAX: u32 = 4;
pub const KAN_J_MAX: u32 = 2;
pub const KAN_N_MAX: usize = 4;
pub const KOSZUL_CUTOFF: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Sharpness(CoefficientDomain),
    Fatness(CoefficientDomain),
    Twins,
    Splitting,
    Atomic,
    KanExtension,
    EdgeIsomorphism(CoefficientDomain),
    CoboundarySquare,
    Normalization,
    CompleteIntersection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The checks that apply to `k`. Normalization is compared only on small
/// complexes, where the unnormalized complex stays manageable.
pub fn plan(k: &SimplicialComplex) -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(DOMAINS.iter().map(|d| Check::Sharpness(*d)));
    out.extend(DOMAINS.iter().map(|d| Check::Fatness(*d)));
    out.push(Check::Twins);
    out.push(Check::Splitting);
    out.push(Check::Atomic);
    out.push(Check::KanExtension);
    out.extend(DOMAINS.iter().map(|d| Check::EdgeIsomorphism(*d)));
    out.push(Check::CoboundarySquare);
    if k.num_vertices() <= 3 {
        out.push(Check::Normalization);
    }
    out.push(Check::CompleteIntersection);
    out
}

impl Check {
    pub fn name(&self) -> String {
        match self {
            Check::Sharpness(d) => format!("sharpness[{d}]"),
            Check::Fatness(d) => format!("fatness[{d}]"),
            Check::Twins => "twins".into(),
            Check::Splitting => "fat-splitting".into(),
            Check::Atomic => "atomic".into(),
            Check::KanExtension => "kan-extension".into(),
            Check::EdgeIsomorphism(d) => format!("edge-isomorphism[{d}]"),
            Check::CoboundarySquare => "coboundary-square".into(),
            Check::Normalization => "normalization".into(),
            Check::CompleteIntersection => "complete-intersection".into(),
        }
    }

    pub fn run(&self, k: &SimplicialComplex) -> CheckOutcome {
        let result = match self {
            Check::Sharpness(d) => sharpness(k, *d),
            Check::Fatness(d) => fatness(k, *d),
            Check::Twins => twins(k),
            Check::Splitting => splitting(k),
            Check::Atomic => atomic(k),
            Check::KanExtension => kan(k),
            Check::EdgeIsomorphism(d) => edge_iso_check(k, *d, EDGE_J_MAX)
                .map(|()| format!("j <= {EDGE_J_MAX}"))
                .map_err(|w| format!("{w:?}")),
            Check::CoboundarySquare => coboundary_square(k),
            Check::Normalization => normalization(k),
            Check::CompleteIntersection => complete_intersection(k),
        };
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CheckOutcome {
            name: self.name(),
            passed,
            detail,
        }
    }
}

/// Runs the whole plan sequentially.
pub fn run_all(k: &SimplicialComplex) -> Vec<CheckOutcome> {
    plan(k).iter().map(|c| c.run(k)).collect()
}

type Outcome = Result<String, String>;

fn tag(k: &SimplicialComplex, what: &str) -> String {
    format!("{what}:{k:?}")
}

fn sharpness(k: &SimplicialComplex, d: CoefficientDomain) -> Outcome {
    verify_sharpness(k, d, I_MAX, J_MAX)
        .map(|_| format!("i <= {I_MAX}, j <= {J_MAX}"))
        .map_err(|w| {
            format!(
                "E2[{}, {}] = {} but expected {}",
                w.i, w.q, w.found, w.expected
            )
        })
}

fn fatness(k: &SimplicialComplex, d: CoefficientDomain) -> Outcome {
    for j in 0..=J_MAX {
        if let Err(f) = is_fat(&exp_cohomology_diagram(k, j, d).contra) {
            return Err(format!("j = {j}: not epic at {}", k.format_face(f)));
        }
    }
    Ok(format!("j <= {J_MAX}"))
}

fn twins(k: &SimplicialComplex) -> Outcome {
    for j in 0..=2 {
        exp_cohomology_diagram(k, j, CoefficientDomain::Integers)
            .validate_twin()
            .map_err(|w| format!("j = {j}: {w:?}"))?;
    }
    Ok("j <= 2".into())
}

fn splitting(k: &SimplicialComplex) -> Outcome {
    let mut rng = rng_for(&tag(k, "splitting"));
    let mut count = 0;
    for j in 0..=2 {
        let t = exp_cohomology_diagram(k, j, CoefficientDomain::Integers);
        for &rho in k.faces().iter().filter(|f| !f.is_empty()) {
            let bd = k.boundary_of_face(rho);
            let lim = limit(&t.contra.restrict(&bd).expect("boundary is a subcomplex"));
            let u = lim.split(&random_limit_element(&mut rng, &lim));
            let lifted = fat_splitting(&t, rho, &u).map_err(|e| e.to_string())?;
            for w in rho.vertices() {
                let mu = rho.without(w);
                let back = t.contra.map(rho, mu).unwrap().apply(&lifted).unwrap();
                if back != u[&mu] {
                    return Err(format!(
                        "j = {j}: lift at {} does not project to {}",
                        k.format_face(rho),
                        k.format_face(mu)
                    ));
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} lifts"))
}

fn atomic(k: &SimplicialComplex) -> Outcome {
    for (i, &mu) in k.facets().iter().enumerate() {
        let rank = 1 + i % 3;
        for d in DOMAINS {
            let diagram = FaceDiagram::atomic(k.clone(), d, mu, rank).expect("facet is a face");
            let lims = higher_limits(&diagram, I_MAX);
            if lims[0] != ModuleSummary::free(rank) || lims[1..].iter().any(|s| !s.is_zero()) {
                return Err(format!("{} over {d}: {lims:?}", k.format_face(mu)));
            }
        }
    }
    Ok(format!("{} facets", k.facets().len()))
}

fn kan(k: &SimplicialComplex) -> Outcome {
    let q = CoefficientDomain::Rationals;
    for &mu in k.facets() {
        let j_complex = k.delete_maximal(mu).expect("facet is maximal");
        for j in 0..=KAN_J_MAX {
            let dj = exp_cohomology_diagram(&j_complex, j, q).contra;
            let ext = right_kan_extension(&dj, k, mu).map_err(|e| e.to_string())?;
            let (a, b) = (
                higher_limits(&ext, KAN_N_MAX),
                higher_limits(&dj, KAN_N_MAX),
            );
            if a != b {
                return Err(format!("{} j = {j}: {a:?} vs {b:?}", k.format_face(mu)));
            }
        }
    }
    Ok(format!("n <= {KAN_N_MAX}, j <= {KAN_J_MAX}"))
}

fn coboundary_square(k: &SimplicialComplex) -> Outcome {
    let mut rng = rng_for(&tag(k, "coboundary"));
    for round in 0..4 {
        let domain = DOMAINS[round % DOMAINS.len()];
        let kind = if round % 2 == 0 {
            Summands::Intervals
        } else {
            Summands::Stars
        };
        let d = random_diagram(&mut rng, k, domain, kind);
        let mut c = Cochains::new(&d, true);
        let mut prev = c.coboundary(0);
        for n in 1..=k.num_faces() {
            let next = c.coboundary(n);
            if !next.mul(&prev).unwrap().is_zero() {
                return Err(format!("round {round}: nonzero at level {n}"));
            }
            if next.rows() == 0 {
                break;
            }
            prev = next;
        }
    }
    Ok("4 random diagrams".into())
}

fn normalization(k: &SimplicialComplex) -> Outcome {
    for d in DOMAINS {
        for j in 0..=2 {
            let diagram = exp_cohomology_diagram(k, j, d).contra;
            let (a, b) = (
                higher_limits(&diagram, 3),
                unnormalized_higher_limits(&diagram, 3),
            );
            if a != b {
                return Err(format!("{d} j = {j}: {a:?} vs {b:?}"));
            }
        }
    }
    Ok("i <= 3, j <= 2".into())
}

/// A face of the same size as `λ(1)` meeting another relation; swapping it
/// into `dw(1)` breaks regularity, so the Koszul check must fail.
pub fn corrupting_face(p: &CIPresentation) -> Option<Face> {
    let first = *p.lambdas.first()?;
    p.complex.faces().iter().copied().find(|f| {
        f.len() == first.len()
            && p.lambdas[1..]
                .iter()
                .any(|l| !l.intersection(*f).is_empty())
    })
}

fn complete_intersection(k: &SimplicialComplex) -> Outcome {
    let p = match ci_detect(k) {
        CiDetection::NotCi(NotCiReason::Overlap(a, b)) => {
            return Ok(format!(
                "not a complete intersection: {} meets {}",
                k.format_face(a),
                k.format_face(b)
            ))
        }
        CiDetection::NotCi(NotCiReason::Void) => return Ok("void complex".into()),
        CiDetection::CompleteIntersection(p) => p,
    };
    let mut detail = format!("t = {}", p.t());
    let model = minimal_model(&p);
    if !model.check_square_zero() {
        return Err("model differential does not square to zero".into());
    }
    koszul_cohomology_check(&p, KOSZUL_CUTOFF)
        .map_err(|w| format!("Koszul degree {}: {} vs {}", w.degree, w.found, w.expected))?;
    hilbert_ci_identity(&p, KOSZUL_CUTOFF)
        .map_err(|j| format!("Hilbert identity fails at t^{j}"))?;
    let gens = automorphism_generators(&p);
    for g in &gens.generators {
        verify_automorphism(&p, &g.matrix).map_err(|e| format!("{}: {e:?}", g.name))?;
    }
    let _ = write!(
        detail,
        ", {} automorphism generators",
        gens.generators.len()
    );
    if let Some(mu) = corrupting_face(&p) {
        let bad = model.with_odd_differential(1, mu);
        if koszul_check_model(&bad, &p.complex, KOSZUL_CUTOFF).is_ok() {
            return Err(format!(
                "corrupted dw1 = v{} was accepted",
                k.format_face(mu)
            ));
        }
        let _ = write!(detail, ", corrupted model rejected");
    }
    Ok(detail)
}
