mod common;

use primexp::exponent::{exponent, lemma22_bound, walk_exists, wielandt};
use primexp::families::FamilySpec;
use primexp::iso::Permutation;
use primexp::{BoolMatrix, Digraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(max_n: usize) -> impl Strategy<Value = BoolMatrix> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<u64>(), n)
            .prop_map(move |rows| BoolMatrix::from_rows(n, &mask_rows(n, &rows)).unwrap())
    })
}

fn mask_rows(n: usize, rows: &[u64]) -> Vec<u64> {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    rows.iter().map(|r| r & mask).collect()
}

/// Primitive digraphs: a Hamiltonian cycle on a random vertex order plus
/// random extra arcs, kept only if primitive.
fn primitive(max_n: usize) -> impl Strategy<Value = Digraph> {
    (3..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                any::<u64>().prop_map(move |seed| {
                    Permutation::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
                }),
                proptest::collection::vec((0..n, 0..n), 1..2 * n),
            )
        })
        .prop_map(|(n, p, extra)| {
            let mut d = Digraph::empty(n).unwrap();
            for i in 0..n {
                d.add_arc(p.image0(i) + 1, p.image0((i + 1) % n) + 1)
                    .unwrap();
            }
            for (u, v) in extra {
                d.add_arc(u + 1, v + 1).unwrap();
            }
            d
        })
        .prop_filter("primitive", |d| d.is_primitive())
}

fn family_spec() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (2..40usize).prop_map(|n| FamilySpec::StandardCycle { n }),
        (3..40usize).prop_map(|n| FamilySpec::D1 { n }),
        (3..40usize).prop_map(|n| FamilySpec::D2 { n }),
        (3..40usize, 1..40usize).prop_map(|(n, g)| FamilySpec::Q1 { n, g }),
        (3..40usize, 1..40usize).prop_map(|(n, g)| FamilySpec::Q2 { n, g }),
        (3..40usize, 1..40usize, 1..40usize).prop_map(|(n, g, k)| FamilySpec::H { n, g, k }),
        (3..40usize, 1..40usize, 1..u64::MAX).prop_map(|(n, g, chords)| FamilySpec::DgN {
            n,
            g,
            chords
        }),
        (3..40usize, 1..40usize, any::<u64>())
            .prop_map(|(n, g, mask)| FamilySpec::ChordFamilyMember { n, g, mask }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matrix_text_round_trips(m in matrix(64)) {
        let text = m.serialize();
        prop_assert_eq!(BoolMatrix::parse(&text).unwrap(), m);
    }

    #[test]
    fn family_spec_round_trips(spec in family_spec()) {
        let text = spec.to_string();
        prop_assert_eq!(text.parse::<FamilySpec>().unwrap(), spec);
    }

    #[test]
    fn exponent_is_a_relabelling_invariant(d in primitive(9), seed in any::<u64>()) {
        let p = Permutation::random(d.order(), &mut ChaCha8Rng::seed_from_u64(seed));
        let e = d.relabel(&p).unwrap();
        prop_assert_eq!(exponent(&d).unwrap().value, exponent(&e).unwrap().value);
        prop_assert_eq!(d.girth(), e.girth());
    }

    #[test]
    fn exponent_is_least_and_within_wielandt(d in primitive(9)) {
        let r = exponent(&d).unwrap();
        let n = d.order();
        prop_assert!(r.value <= wielandt(n));
        for u in 1..=n {
            for v in 1..=n {
                prop_assert!(walk_exists(&d, u, v, r.value).unwrap());
            }
        }
        if let Some((u, v)) = r.certificate {
            prop_assert!(!walk_exists(&d, u, v, r.value - 1).unwrap());
        }
        prop_assert!(d.to_matrix().power(r.value).is_all_positive());
        prop_assert_eq!(Some(r.value), common::exponent(&common::adj(&d)));
    }

    #[test]
    fn walk_bound_dominates(d in primitive(8)) {
        prop_assert!(exponent(&d).unwrap().value <= lemma22_bound(&d).unwrap());
    }

    #[test]
    fn adding_arcs_never_raises_the_exponent(d in primitive(8), extra in proptest::collection::vec((0usize..64, 0usize..64), 1..6)) {
        let n = d.order();
        let mut sup = d.clone();
        for (u, v) in extra {
            sup.add_arc(u % n + 1, v % n + 1).unwrap();
        }
        prop_assert!(sup.contains_spanning(&d));
        prop_assert!(sup.is_primitive());
        prop_assert!(exponent(&sup).unwrap().value <= exponent(&d).unwrap().value);
    }

    #[test]
    fn matrix_power_matches_repeated_product(m in matrix(10), k in 0u64..20) {
        let mut acc = BoolMatrix::identity(m.order()).unwrap();
        for _ in 0..k {
            acc = acc.multiply(&m).unwrap();
        }
        prop_assert_eq!(m.power(k), acc);
    }
}
