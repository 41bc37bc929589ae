use proptest::prelude::*;

use srlim_core::corpus::{all_complexes, labels, random_complex, rng_for};
use srlim_core::{Face, SimplicialComplex};

/// Chains of subsets of an `m`-set by brute force over all sequences.
fn boolean_chains(m: usize, n: usize) -> usize {
    let subsets: Vec<u32> = (0..(1u32 << m)).collect();
    let mut count = 0;
    let mut stack: Vec<Vec<u32>> = subsets.iter().map(|s| vec![*s]).collect();
    while let Some(chain) = stack.pop() {
        if chain.len() == n + 1 {
            count += 1;
            continue;
        }
        let last = *chain.last().unwrap();
        for &s in &subsets {
            if s != last && s & !last == 0 {
                let mut c = chain.clone();
                c.push(s);
                stack.push(c);
            }
        }
    }
    count
}

fn arbitrary_complex() -> impl Strategy<Value = SimplicialComplex> {
    (0u64..5000, 1usize..=6)
        .prop_map(|(seed, m)| random_complex(&mut rng_for(&seed.to_string()), m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn faces_are_down_closed(k in arbitrary_complex()) {
        prop_assert!(k.contains(Face::EMPTY));
        for f in k.faces() {
            for v in f.vertices() {
                prop_assert!(k.contains(f.without(v)));
            }
        }
        let facet_labels: Vec<Vec<String>> = k.facets().iter().map(|f| k.face_labels(*f)).collect();
        let rebuilt = SimplicialComplex::from_facets(k.labels(), &facet_labels).unwrap();
        prop_assert_eq!(rebuilt.facets(), k.facets());
        prop_assert_eq!(&rebuilt, &k);
    }

    #[test]
    fn link_and_boundary(k in arbitrary_complex()) {
        prop_assert_eq!(&k.link(Face::EMPTY).unwrap(), &k);
        for f in k.faces().iter().filter(|f| !f.is_empty()) {
            prop_assert_eq!(k.boundary_of_face(*f).num_faces(), (1 << f.len()) - 1);
            let l = k.link(*f).unwrap();
            for g in l.faces() {
                prop_assert!(g.intersection(*f).is_empty());
                prop_assert!(k.contains(g.union(*f)));
            }
        }
    }

    #[test]
    fn minimal_nonfaces_generate_the_nonfaces(k in arbitrary_complex()) {
        let mins = k.minimal_nonfaces();
        for u in (0u32..(1 << k.num_vertices())).map(Face::from_bits) {
            let covered = mins.iter().any(|n| n.is_subset(u));
            prop_assert_eq!(covered, !k.contains(u));
        }
        for n in &mins {
            prop_assert!(!k.contains(*n));
        }
    }

    #[test]
    fn flags_are_strict_and_complete(k in arbitrary_complex(), n in 0usize..4) {
        let flags = k.flags(n);
        for c in &flags {
            prop_assert_eq!(c.len(), n + 1);
            prop_assert!(c.windows(2).all(|w| w[1].is_proper_subset(w[0])));
        }
        let mut sorted = flags.clone();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), flags.len());
        if n + 1 > k.num_faces() {
            prop_assert!(flags.is_empty());
        }
    }
}

#[test]
fn simplex_flags_count_boolean_chains() {
    for m in 0..=4 {
        let k = SimplicialComplex::simplex(labels(m));
        for n in 0..=m + 1 {
            assert_eq!(k.flags(n).len(), boolean_chains(m, n), "m = {m}, n = {n}");
        }
    }
}

#[test]
fn enumerated_complexes_are_distinct() {
    for m in 0..=4 {
        let all = all_complexes(m);
        for (i, a) in all.iter().enumerate() {
            assert!(all[i + 1..].iter().all(|b| a != b));
        }
    }
}
