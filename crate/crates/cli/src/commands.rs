use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};
use srlim_core::diagram::{
    exp_cohomology_diagram, is_fat, limit, right_kan_extension, FunctorialityWitness, TwinWitness,
};
use srlim_core::higher::{bk_e2_table, higher_limits, verify_sharpness};
use srlim_core::rational::{
    automorphism_generators, ci_detect, hilbert_ci_identity, koszul_cohomology_check,
    minimal_model, CIPresentation, CiDetection, NotCiReason,
};
use srlim_core::stanley_reisner::StanleyReisnerAlgebra;
use srlim_core::verify::plan;
use srlim_core::{CoefficientDomain, Face, ModuleSummary, SimplicialComplex};

use crate::Command;

/// Small integers as JSON numbers, anything larger as a decimal string.
fn big_to_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}

fn summary(s: &ModuleSummary) -> Value {
    json!({
        "free_rank": s.free_rank,
        "torsion": s.torsion.iter().map(big_to_json).collect::<Vec<_>>(),
    })
}

fn faces(k: &SimplicialComplex, fs: &[Face]) -> Value {
    fs.iter()
        .map(|f| k.face_labels(*f))
        .collect::<Vec<_>>()
        .into()
}

pub(crate) fn execute(cmd: &Command, d: CoefficientDomain, k: &SimplicialComplex) -> (Value, bool) {
    match cmd {
        Command::Faces => {
            let mut f_vector = vec![0usize; (k.dim() + 2).max(1) as usize];
            for f in k.faces() {
                f_vector[f.len()] += 1;
            }
            let result = json!({
                "dimension": k.dim(),
                "f_vector": f_vector,
                "faces": faces(k, k.faces()),
                "facets": faces(k, k.facets()),
            });
            (result, true)
        }
        Command::Nonfaces => (
            json!({ "minimal_nonfaces": faces(k, &k.minimal_nonfaces()) }),
            true,
        ),
        Command::Hilbert { max_degree } => hilbert(k, *max_degree),
        Command::SrBasis { degree } => {
            let a = StanleyReisnerAlgebra::new(k.clone(), CoefficientDomain::Rationals);
            let basis: Vec<String> = a
                .basis(*degree)
                .iter()
                .map(|m| m.monomial(k.labels()))
                .collect();
            (
                json!({ "degree": degree, "dimension": basis.len(), "monomials": basis }),
                true,
            )
        }
        Command::Lim { degree } => {
            let lim = limit(&exp_cohomology_diagram(k, *degree, d).contra);
            let h = StanleyReisnerAlgebra::new(k.clone(), d).hilbert_function(*degree);
            let result = json!({
                "coefficients": d.to_string(),
                "degree": 2 * degree,
                "rank": lim.rank(),
                "hilbert_function": h,
            });
            (result, true)
        }
        Command::HigherLim { degree, imax } => {
            let lims = higher_limits(&exp_cohomology_diagram(k, *degree, d).contra, *imax);
            let result = json!({
                "coefficients": d.to_string(),
                "degree": 2 * degree,
                "limits": lims.iter().map(summary).collect::<Vec<_>>(),
                "acyclic": lims[1..].iter().all(ModuleSummary::is_zero),
            });
            (result, true)
        }
        Command::BkTable { imax, jmax } => bk_table(k, d, *imax, *jmax),
        Command::FatCheck { jmax } => {
            let witness = (0..=*jmax).find_map(|j| {
                is_fat(&exp_cohomology_diagram(k, j, d).contra)
                    .err()
                    .map(|f| json!({ "degree": 2 * j, "face": k.format_face(f) }))
            });
            check_result(d, *jmax, witness)
        }
        Command::TwinCheck { jmax } => {
            let witness = (0..=*jmax).find_map(|j| {
                exp_cohomology_diagram(k, j, d)
                    .validate_twin()
                    .err()
                    .map(|w| json!({ "degree": 2 * j, "failure": twin_failure(k, &w) }))
            });
            check_result(d, *jmax, witness)
        }
        Command::KanCheck { jmax, nmax } => kan_check(k, d, *jmax, *nmax),
        Command::Ci => (ci(k), true),
        Command::Model => match presentation(k) {
            Ok(p) => {
                let model = minimal_model(&p);
                let generators: Vec<Value> = model
                    .generators
                    .iter()
                    .zip(&model.differential)
                    .map(|(g, dg)| {
                        json!({
                            "name": g.name,
                            "degree": g.degree,
                            "odd": g.odd,
                            "differential": dg.format(&model.labels),
                        })
                    })
                    .collect();
                (
                    json!({ "complete_intersection": true, "generators": generators }),
                    true,
                )
            }
            Err(v) => (v, false),
        },
        Command::KoszulCheck { cutoff } => match presentation(k) {
            Ok(p) => koszul(&p, *cutoff),
            Err(v) => (v, false),
        },
        Command::AutGens => match presentation(k) {
            Ok(p) => (aut_gens(k, &p), true),
            Err(v) => (v, false),
        },
        Command::VerifyAll => {
            let outcomes: Vec<_> = plan(k).par_iter().map(|c| c.run(k)).collect();
            let passed = outcomes.iter().all(|o| o.passed);
            let checks: Vec<Value> = outcomes
                .iter()
                .map(|o| json!({ "name": o.name, "passed": o.passed, "detail": o.detail }))
                .collect();
            (json!({ "passed": passed, "checks": checks }), passed)
        }
    }
}

fn check_result(d: CoefficientDomain, jmax: u32, witness: Option<Value>) -> (Value, bool) {
    let passed = witness.is_none();
    let result = json!({
        "coefficients": d.to_string(),
        "jmax": jmax,
        "passed": passed,
        "witness": witness,
    });
    (result, passed)
}

fn hilbert(k: &SimplicialComplex, max_degree: u32) -> (Value, bool) {
    let a = StanleyReisnerAlgebra::new(k.clone(), CoefficientDomain::Rationals);
    let values: Vec<u64> = (0..=max_degree).map(|j| a.hilbert_function(j)).collect();
    match a.hilbert_series(max_degree) {
        Ok(s) => {
            let result = json!({
                "values": values,
                "series": s.to_string(),
                "numerator": s.numerator,
                "denominator_power": s.denominator_power,
            });
            (result, true)
        }
        Err(e) => (json!({ "values": values, "error": e.to_string() }), false),
    }
}

fn bk_table(k: &SimplicialComplex, d: CoefficientDomain, imax: usize, jmax: u32) -> (Value, bool) {
    let (table, witness) = match verify_sharpness(k, d, imax, jmax) {
        Ok(t) => (t, None),
        Err(w) => (
            bk_e2_table(k, d, imax, jmax),
            Some(
                json!({ "i": w.i, "q": w.q, "found": w.found.to_string(), "expected": w.expected.to_string() }),
            ),
        ),
    };
    let rows: Vec<Value> = (0..=2 * jmax)
        .map(|q| {
            let cells: Vec<String> = (0..=imax)
                .map(|i| {
                    table
                        .get(i, q)
                        .map_or_else(|| "?".into(), |s| s.to_string())
                })
                .collect();
            json!({ "q": q, "lim": cells })
        })
        .collect();
    let result = json!({
        "coefficients": d.to_string(),
        "imax": imax,
        "jmax": jmax,
        "rows": rows,
        "collapses": witness.is_none(),
        "witness": witness,
    });
    (result, true)
}

fn twin_failure(k: &SimplicialComplex, w: &TwinWitness) -> String {
    let f = |x: &Face| k.format_face(*x);
    match w {
        TwinWitness::Functoriality(FunctorialityWitness::NotIdentity(s)) => {
            format!("map on {} is not the identity", f(s))
        }
        TwinWitness::Functoriality(FunctorialityWitness::Composite(t, r, s)) => {
            format!("projections {} > {} > {} do not compose", f(t), f(r), f(s))
        }
        TwinWitness::Retraction { sigma, tau } => {
            format!(
                "p({},{}) i({},{}) is not the identity",
                f(tau),
                f(sigma),
                f(sigma),
                f(tau)
            )
        }
        TwinWitness::Square {
            tau,
            sigma,
            sigma_prime,
        } => {
            format!(
                "square at {} through {} and {} does not commute",
                f(tau),
                f(sigma),
                f(sigma_prime)
            )
        }
    }
}

fn kan_check(k: &SimplicialComplex, d: CoefficientDomain, jmax: u32, nmax: usize) -> (Value, bool) {
    let mut rows = Vec::new();
    let mut witness = None;
    'facets: for &mu in k.facets() {
        let j_complex = k.delete_maximal(mu).expect("facets are maximal");
        for j in 0..=jmax {
            let dj = exp_cohomology_diagram(&j_complex, j, d).contra;
            let ext = match right_kan_extension(&dj, k, mu) {
                Ok(e) => e,
                Err(e) => {
                    witness = Some(
                        json!({ "facet": k.format_face(mu), "degree": 2 * j, "error": e.to_string() }),
                    );
                    break 'facets;
                }
            };
            let (a, b) = (higher_limits(&ext, nmax), higher_limits(&dj, nmax));
            let show = |v: &[ModuleSummary]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
            rows.push(json!({ "facet": k.format_face(mu), "degree": 2 * j, "limits": show(&a) }));
            if a != b {
                witness = Some(json!({
                    "facet": k.format_face(mu),
                    "degree": 2 * j,
                    "extension": show(&a),
                    "restriction": show(&b),
                }));
                break 'facets;
            }
        }
    }
    let passed = witness.is_none();
    let result = json!({
        "coefficients": d.to_string(),
        "jmax": jmax,
        "nmax": nmax,
        "passed": passed,
        "comparisons": rows,
        "witness": witness,
    });
    (result, passed)
}

fn ci(k: &SimplicialComplex) -> Value {
    match ci_detect(k) {
        CiDetection::CompleteIntersection(p) => json!({
            "complete_intersection": true,
            "relations": faces(k, &p.lambdas),
            "sizes": p.sizes(),
        }),
        CiDetection::NotCi(reason) => json!({
            "complete_intersection": false,
            "witness": not_ci(k, &reason),
        }),
    }
}

fn not_ci(k: &SimplicialComplex, reason: &NotCiReason) -> Value {
    match reason {
        NotCiReason::Void => json!({ "void": true }),
        NotCiReason::Overlap(a, b) => json!({
            "overlapping_nonfaces": [k.face_labels(*a), k.face_labels(*b)],
        }),
    }
}

/// The presentation, or the report explaining why there is none.
fn presentation(k: &SimplicialComplex) -> Result<CIPresentation, Value> {
    match ci_detect(k) {
        CiDetection::CompleteIntersection(p) => Ok(p),
        CiDetection::NotCi(reason) => Err(json!({
            "complete_intersection": false,
            "witness": not_ci(k, &reason),
        })),
    }
}

fn koszul(p: &CIPresentation, cutoff: u32) -> (Value, bool) {
    let (dims, koszul_witness) = match koszul_cohomology_check(p, cutoff) {
        Ok(dims) => (Some(dims), None),
        Err(w) => (
            None,
            Some(json!({ "degree": w.degree, "found": w.found, "expected": w.expected })),
        ),
    };
    let hilbert = hilbert_ci_identity(p, cutoff).err();
    let passed = koszul_witness.is_none() && hilbert.is_none();
    let result = json!({
        "complete_intersection": true,
        "cutoff": cutoff,
        "passed": passed,
        "cohomology_dimensions": dims,
        "koszul_witness": koszul_witness,
        "hilbert_identity_fails_at": hilbert,
    });
    (result, passed)
}

fn aut_gens(k: &SimplicialComplex, p: &CIPresentation) -> Value {
    let gens = automorphism_generators(p);
    let label = |v: &usize| k.labels()[*v].clone();
    let generators: Vec<Value> = gens
        .generators
        .iter()
        .map(|g| {
            let rows: Vec<Vec<String>> = g
                .matrix
                .to_dense()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect();
            json!({ "name": g.name, "matrix": rows })
        })
        .collect();
    json!({
        "complete_intersection": true,
        "free_vertices": gens.free_vertices.iter().map(label).collect::<Vec<_>>(),
        "relations": gens.lambdas.iter().map(|l| l.iter().map(label).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "permutation_group_order": gens.permutation_group_order,
        "generators": generators,
    })
}
