//! Acceptance criteria AC1 to AC10. Prints one PASS or FAIL line per
//! criterion and exits nonzero if any criterion fails.

use std::io::Write;
use std::process::{Command, ExitCode, Stdio};
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use srlim_cli::ComplexDocument;
use srlim_core::corpus::{
    acceptance_corpus, all_complexes, named, random_diagram, random_limit_element, rng_for,
    Summands,
};
use srlim_core::diagram::{
    exp_cohomology_diagram, fat_splitting, is_fat, limit, right_kan_extension, FaceDiagram,
};
use srlim_core::higher::{
    higher_limit, higher_limits, unnormalized_higher_limits, verify_sharpness, Cochains,
};
use srlim_core::rational::{
    ci_detect, hilbert_ci_identity, koszul_check_model, koszul_cohomology_check, minimal_model,
    CiDetection,
};
use srlim_core::stanley_reisner::edge_iso_check;
use srlim_core::verify::corrupting_face;
use srlim_core::{CoefficientDomain, Face, ModuleSummary, SimplicialComplex};

const DOMAINS: [CoefficientDomain; 4] = [
    CoefficientDomain::Rationals,
    CoefficientDomain::PrimeField(2),
    CoefficientDomain::PrimeField(3),
    CoefficientDomain::Integers,
];

type Corpus = Vec<(String, SimplicialComplex)>;
type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

/// Collects the first few failures of a parallel sweep.
fn sweep<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> Result<(), String> + Sync,
) -> Result<usize, String> {
    let failures: Vec<String> = items.par_iter().filter_map(|x| check(x).err()).collect();
    if failures.is_empty() {
        Ok(items.len())
    } else {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        Err(format!(
            "{} failures, e.g. {}",
            failures.len(),
            shown.join("; ")
        ))
    }
}

fn ac1(corpus: &Corpus) -> Verdict {
    let cells: Vec<(&str, &SimplicialComplex, CoefficientDomain)> = corpus
        .iter()
        .flat_map(|(n, k)| DOMAINS.iter().map(move |d| (n.as_str(), k, *d)))
        .collect();
    let n = sweep(&cells, |(name, k, d)| {
        verify_sharpness(k, *d, 5, 3).map(|_| ()).map_err(|w| {
            format!(
                "{name} over {d}: E2[{},{}] = {} not {}",
                w.i, w.q, w.found, w.expected
            )
        })
    })?;
    Ok(format!(
        "{} complexes x 4 domains = {n} tables collapse (i <= 5, j <= 3)",
        corpus.len()
    ))
}

fn ac2(corpus: &Corpus) -> Verdict {
    let cells: Vec<(&str, &SimplicialComplex, CoefficientDomain, u32)> = corpus
        .iter()
        .flat_map(|(n, k)| {
            DOMAINS
                .iter()
                .flat_map(move |d| (0..=3).map(move |j| (n.as_str(), k, *d, j)))
        })
        .collect();
    let fat = sweep(&cells, |(name, k, d, j)| {
        is_fat(&exp_cohomology_diagram(k, *j, *d).contra)
            .map_err(|f| format!("{name} over {d}, j = {j}: not epic at {}", k.format_face(f)))
    })?;

    let mut rng = rng_for("acceptance-splitting");
    let mut samples = 0;
    while samples < 200 {
        let (name, k) = &corpus[rng.gen_range(0..corpus.len())];
        let nonempty: Vec<Face> = k
            .faces()
            .iter()
            .copied()
            .filter(|f| !f.is_empty())
            .collect();
        if nonempty.is_empty() {
            continue;
        }
        let rho = nonempty[rng.gen_range(0..nonempty.len())];
        let j = rng.gen_range(0..=3);
        let d = DOMAINS[rng.gen_range(0..DOMAINS.len())];
        let t = exp_cohomology_diagram(k, j, d);
        let lim = limit(
            &t.contra
                .restrict(&k.boundary_of_face(rho))
                .map_err(|e| e.to_string())?,
        );
        let u = lim.split(&random_limit_element(&mut rng, &lim));
        let lift = fat_splitting(&t, rho, &u).map_err(|e| format!("{name}: {e}"))?;
        for (sigma, v) in &u {
            if t.contra.map(rho, *sigma).unwrap().apply(&lift).unwrap() != *v {
                return Err(format!(
                    "{name} over {d}, j = {j}: lift at {} misses {}",
                    k.format_face(rho),
                    k.format_face(*sigma)
                ));
            }
        }
        samples += 1;
    }
    Ok(format!(
        "{fat} diagrams fat; {samples} splittings reproduce their families"
    ))
}

fn ac3() -> Verdict {
    let k = SimplicialComplex::from_facets(&["1", "2"], &[vec!["1"], vec!["2"]]).unwrap();
    for d in [
        CoefficientDomain::Rationals,
        CoefficientDomain::PrimeField(2),
    ] {
        let diagram = FaceDiagram::atomic(k.clone(), d, Face::EMPTY, 1).unwrap();
        if is_fat(&diagram).is_ok() {
            return Err(format!("over {d} the diagram was reported fat"));
        }
        let lim1 = higher_limit(&diagram, 1);
        if lim1 != ModuleSummary::free(1) {
            return Err(format!("over {d}: lim^1 = {lim1}"));
        }
    }
    Ok("lim^1 = R^1 over Q and F2".into())
}

fn ac4(corpus: &Corpus) -> Verdict {
    let mut rng = rng_for("acceptance-atomic");
    let samples: Vec<(String, SimplicialComplex, Face, usize, CoefficientDomain)> = (0..100)
        .map(|_| {
            let (name, k) = corpus[rng.gen_range(0..corpus.len())].clone();
            let mu = k.facets()[rng.gen_range(0..k.facets().len())];
            let rank = rng.gen_range(1..=3);
            let d = DOMAINS[rng.gen_range(0..DOMAINS.len())];
            (name, k, mu, rank, d)
        })
        .collect();
    let n = sweep(&samples, |(name, k, mu, rank, d)| {
        let diagram = FaceDiagram::atomic(k.clone(), *d, *mu, *rank).map_err(|e| e.to_string())?;
        let lims = higher_limits(&diagram, 5);
        if lims[0] == ModuleSummary::free(*rank) && lims[1..].iter().all(ModuleSummary::is_zero) {
            Ok(())
        } else {
            Err(format!(
                "{name} at {} over {d}: {lims:?}",
                k.format_face(*mu)
            ))
        }
    })?;
    Ok(format!("{n} atomic diagrams"))
}

fn ac5(corpus: &Corpus) -> Verdict {
    let cells: Vec<(&str, &SimplicialComplex, Face, u32)> = corpus
        .iter()
        .flat_map(|(n, k)| {
            k.facets()
                .iter()
                .flat_map(move |mu| (0..=2).map(move |j| (n.as_str(), k, *mu, j)))
        })
        .collect();
    let n = sweep(&cells, |(name, k, mu, j)| {
        let jc = k.delete_maximal(*mu).map_err(|e| e.to_string())?;
        let dj = exp_cohomology_diagram(&jc, *j, CoefficientDomain::Rationals).contra;
        let ext = right_kan_extension(&dj, k, *mu).map_err(|e| e.to_string())?;
        let (a, b) = (higher_limits(&ext, 4), higher_limits(&dj, 4));
        if a == b {
            Ok(())
        } else {
            Err(format!(
                "{name} at {}, j = {j}: {a:?} vs {b:?}",
                k.format_face(*mu)
            ))
        }
    })?;
    Ok(format!("{n} (facet, j) extensions agree for n <= 4"))
}

fn ac6(corpus: &Corpus) -> Verdict {
    let cells: Vec<(&str, &SimplicialComplex, CoefficientDomain)> = corpus
        .iter()
        .flat_map(|(n, k)| DOMAINS.iter().map(move |d| (n.as_str(), k, *d)))
        .collect();
    let n = sweep(&cells, |(name, k, d)| {
        edge_iso_check(k, *d, 4).map_err(|w| format!("{name} over {d}: {w:?}"))
    })?;
    Ok(format!("{n} (complex, domain) pairs, j <= 4 with products"))
}

fn ac7(corpus: &Corpus) -> Verdict {
    let mut rng = rng_for("acceptance-coboundary");
    let diagrams: Vec<(String, FaceDiagram)> = (0..500)
        .map(|i| {
            let (name, k) = &corpus[rng.gen_range(0..corpus.len())];
            let d = DOMAINS[rng.gen_range(0..DOMAINS.len())];
            let kind = if i % 2 == 0 {
                Summands::Intervals
            } else {
                Summands::Stars
            };
            (name.clone(), random_diagram(&mut rng, k, d, kind))
        })
        .collect();
    let n = sweep(&diagrams, |(name, diagram)| {
        if let Err(w) = diagram.validate_functoriality() {
            return Err(format!("{name}: not functorial {w:?}"));
        }
        let mut c = Cochains::new(diagram, true);
        // Levels beyond the longest flag are zero.
        for n in 0..=diagram.complex().num_faces() {
            if !c.coboundary(n + 1).mul(&c.coboundary(n)).unwrap().is_zero() {
                return Err(format!("{name}: nonzero at level {n}"));
            }
        }
        Ok(())
    })?;
    Ok(format!("{n} random diagrams"))
}

fn ac8(corpus: &Corpus) -> Verdict {
    let named = named();
    let find = |n: &str| named.iter().find(|(m, _)| m == n).unwrap().1.clone();
    let is_ci =
        |k: &SimplicialComplex| matches!(ci_detect(k), CiDetection::CompleteIntersection(_));
    for (n, expect) in [
        ("triangle", true),
        ("triangle-boundary", true),
        ("4-cycle", true),
        ("5-cycle", false),
    ] {
        if is_ci(&find(n)) != expect {
            return Err(format!("{n} misclassified"));
        }
    }
    let members: Vec<_> = corpus
        .iter()
        .filter_map(|(n, k)| match ci_detect(k) {
            CiDetection::CompleteIntersection(p) => Some((n.clone(), p)),
            CiDetection::NotCi(_) => None,
        })
        .collect();
    let n = sweep(&members, |(name, p)| {
        koszul_cohomology_check(p, 10).map_err(|w| {
            format!(
                "{name}: Koszul degree {} gives {} not {}",
                w.degree, w.found, w.expected
            )
        })?;
        hilbert_ci_identity(p, 10).map_err(|j| format!("{name}: Hilbert identity fails at t^{j}"))
    })?;
    let mut corrupted = 0;
    for (name, p) in &members {
        if let Some(mu) = corrupting_face(p) {
            let bad = minimal_model(p).with_odd_differential(1, mu);
            if koszul_check_model(&bad, &p.complex, 10).is_ok() {
                return Err(format!(
                    "{name}: corrupted model dw1 = v{} accepted",
                    p.complex.format_face(mu)
                ));
            }
            corrupted += 1;
        }
    }
    if corrupted == 0 {
        return Err("no corrupted model was exercised".into());
    }
    Ok(format!("classification ok; {n} complete intersections verified to degree 10; {corrupted} corrupted models rejected"))
}

fn ac9() -> Verdict {
    let ks: Vec<SimplicialComplex> = (0..=3).flat_map(all_complexes).collect();
    let cells: Vec<(&SimplicialComplex, CoefficientDomain, u32)> = ks
        .iter()
        .flat_map(|k| {
            DOMAINS
                .iter()
                .flat_map(move |d| (0..=2).map(move |j| (k, *d, j)))
        })
        .collect();
    let n = sweep(&cells, |(k, d, j)| {
        let diagram = exp_cohomology_diagram(k, *j, *d).contra;
        let (a, b) = (
            higher_limits(&diagram, 3),
            unnormalized_higher_limits(&diagram, 3),
        );
        if a == b {
            Ok(())
        } else {
            Err(format!("{k:?} over {d}, j = {j}: {a:?} vs {b:?}"))
        }
    })?;
    Ok(format!("{} complexes, {n} comparisons", ks.len()))
}

fn verify_all(doc: &str, threads: &str) -> Result<Vec<u8>, String> {
    let mut child = Command::new(env!("CARGO_BIN_EXE_srlim"))
        .args(["verify-all", "--threads", threads])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(doc.as_bytes())
        .map_err(|e| e.to_string())?;
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    if out.status.code() != Some(0) {
        return Err(format!("exit status {:?}", out.status.code()));
    }
    Ok(out.stdout)
}

fn ac10() -> Verdict {
    let mut bytes = 0;
    for (name, k) in named() {
        let doc = serde_json::to_string(&ComplexDocument::from_complex(&k)).unwrap();
        let runs = [
            verify_all(&doc, "1")?,
            verify_all(&doc, "1")?,
            verify_all(&doc, "4")?,
        ];
        if runs[0] != runs[1] {
            return Err(format!("{name}: repeated runs differ"));
        }
        if runs[0] != runs[2] {
            return Err(format!("{name}: 1 and 4 threads differ"));
        }
        bytes += runs[0].len();
    }
    Ok(format!(
        "5 complexes, identical reports ({bytes} bytes each way)"
    ))
}

fn main() -> ExitCode {
    let corpus = acceptance_corpus();
    let criteria: Vec<Criterion> = vec![
        ("AC1", Box::new(|| ac1(&corpus))),
        ("AC2", Box::new(|| ac2(&corpus))),
        ("AC3", Box::new(ac3)),
        ("AC4", Box::new(|| ac4(&corpus))),
        ("AC5", Box::new(|| ac5(&corpus))),
        ("AC6", Box::new(|| ac6(&corpus))),
        ("AC7", Box::new(|| ac7(&corpus))),
        ("AC8", Box::new(|| ac8(&corpus))),
        ("AC9", Box::new(ac9)),
        ("AC10", Box::new(ac10)),
    ];
    let mut failed = 0;
    for (id, check) in criteria {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("{id:<5} PASS  {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("{id:<5} FAIL  {detail} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
