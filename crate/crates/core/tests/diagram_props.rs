use std::collections::BTreeMap;

use proptest::prelude::*;

use srlim_core::corpus::{acceptance_corpus, named, random_limit_element, rng_for};
use srlim_core::diagram::{
    exp_cohomology_diagram, fat_splitting, is_fat, limit, right_kan_extension, FaceDiagram,
};
use srlim_core::higher::higher_limits;
use srlim_core::linalg::ModuleSummary;
use srlim_core::{CoefficientDomain, Face, SimplicialComplex};

const DOMAINS: [CoefficientDomain; 4] = [
    CoefficientDomain::Rationals,
    CoefficientDomain::PrimeField(2),
    CoefficientDomain::PrimeField(3),
    CoefficientDomain::Integers,
];

/// Degree-`j` monomials supported on faces, counted one exponent vector at
/// a time.
fn supported_monomials(k: &SimplicialComplex, j: u32) -> usize {
    fn rec(k: &SimplicialComplex, v: usize, left: u32, support: Face) -> usize {
        if v == k.num_vertices() {
            return (left == 0 && k.contains(support)) as usize;
        }
        (0..=left)
            .map(|e| {
                rec(
                    k,
                    v + 1,
                    left - e,
                    if e > 0 { support.with(v) } else { support },
                )
            })
            .sum()
    }
    rec(k, 0, j, Face::EMPTY)
}

fn corpus_index() -> impl Strategy<Value = usize> {
    0..acceptance_corpus().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn limit_rank_counts_supported_monomials(i in corpus_index(), j in 0u32..=3, d in 0usize..4) {
        let (_, k) = &acceptance_corpus()[i];
        let lim = limit(&exp_cohomology_diagram(k, j, DOMAINS[d]).contra);
        prop_assert_eq!(lim.rank(), supported_monomials(k, j));
    }

    #[test]
    fn limit_columns_satisfy_every_equation(i in corpus_index(), j in 0u32..=2) {
        let (_, k) = &acceptance_corpus()[i];
        let d = exp_cohomology_diagram(k, j, CoefficientDomain::Integers).contra;
        let lim = limit(&d);
        for c in 0..lim.rank() {
            let fam = lim.family(c);
            for (tau, ut) in &fam {
                for (sigma, us) in fam.range(..=*tau) {
                    if sigma.is_subset(*tau) {
                        prop_assert_eq!(&d.map(*tau, *sigma).unwrap().apply(ut).unwrap(), us);
                    }
                }
            }
        }
    }

    #[test]
    fn splitting_lifts_compatible_families(i in corpus_index(), j in 0u32..=3, seed in 0u64..1000) {
        let (_, k) = &acceptance_corpus()[i];
        let t = exp_cohomology_diagram(k, j, CoefficientDomain::Integers);
        let mut rng = rng_for(&format!("split-{seed}"));
        for &rho in k.faces().iter().filter(|f| !f.is_empty()) {
            let lim = limit(&t.contra.restrict(&k.boundary_of_face(rho)).unwrap());
            let u = lim.split(&random_limit_element(&mut rng, &lim));
            let lifted = fat_splitting(&t, rho, &u).unwrap();
            for w in rho.vertices() {
                let mu = rho.without(w);
                prop_assert_eq!(&t.contra.map(rho, mu).unwrap().apply(&lifted).unwrap(), &u[&mu]);
            }
        }
    }

    #[test]
    fn kan_extension_preserves_derived_limits(i in corpus_index(), j in 0u32..=2) {
        let (_, k) = &acceptance_corpus()[i];
        for &mu in k.facets() {
            let jk = k.delete_maximal(mu).unwrap();
            let dj = exp_cohomology_diagram(&jk, j, CoefficientDomain::Rationals).contra;
            let ext = right_kan_extension(&dj, k, mu).unwrap();
            prop_assert!(ext.validate_functoriality().is_ok());
            prop_assert_eq!(higher_limits(&ext, 4), higher_limits(&dj, 4));
        }
    }
}

#[test]
fn exponential_twins_are_fat_and_valid() {
    for (_, k) in named() {
        for d in DOMAINS {
            for j in 0..=3 {
                let t = exp_cohomology_diagram(&k, j, d);
                assert!(t.validate_twin().is_ok());
                assert!(is_fat(&t.contra).is_ok());
            }
        }
    }
}

#[test]
fn non_fat_diagram_fails_at_a_vertex() {
    let k = SimplicialComplex::from_facets(&["1", "2"], &[vec!["1"], vec!["2"]]).unwrap();
    let d = FaceDiagram::atomic(k, CoefficientDomain::Rationals, Face::EMPTY, 1).unwrap();
    assert_eq!(is_fat(&d), Err(Face::from_indices([0])));
}

#[test]
fn kan_extension_limit_matches_on_a_triangle() {
    let (_, tri) = &named()[0];
    let mu = Face::from_indices([0, 1]);
    let dj = exp_cohomology_diagram(
        &tri.delete_maximal(mu).unwrap(),
        1,
        CoefficientDomain::Rationals,
    )
    .contra;
    let ext = right_kan_extension(&dj, tri, mu).unwrap();
    assert_eq!(ext.dim(mu), Some(2));
    assert_eq!(limit(&ext).rank(), limit(&dj).rank());
    let lims: BTreeMap<usize, ModuleSummary> =
        higher_limits(&ext, 3).into_iter().enumerate().collect();
    assert!(lims.iter().all(|(i, s)| *i == 0 || s.is_zero()));
}
