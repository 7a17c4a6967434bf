use std::collections::BTreeSet;

use hibi_core::betti::graded_betti;
use hibi_core::homology::{boundary_matrix, reduced_euler_characteristic, reduced_homology_dim};
use hibi_core::initial::hochster_graded_betti;
use hibi_core::linalg::{bareiss_rank, rank_mod_p, rank_rational, IntMatrix};
use hibi_core::semigroup::{divisor_complex, generator_vector, membership};
use hibi_core::{
    DistributiveLattice, FieldSpec, OrderIdeal, Poset, SemigroupElement, SimplicialComplex,
};
use proptest::prelude::*;

/// Posets on up to `max` elements with relations only from lower to higher
/// labels, so every draw is acyclic.
fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (0..=max).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let rel: Vec<(usize, usize)> = pairs
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(&p, _)| p)
                .collect();
            Poset::from_relations(n, &rel).unwrap()
        })
    })
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    proptest::collection::vec(proptest::collection::btree_set(0usize..7, 1..=4), 1..6).prop_map(
        |facets| {
            let facets: Vec<Vec<usize>> = facets
                .into_iter()
                .map(|f| f.into_iter().collect())
                .collect();
            SimplicialComplex::from_facets(&facets)
        },
    )
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

/// A random element of `H`: lattice plus a multiset of generators.
fn lattice_and_element(
    max_n: usize,
    max_d: usize,
) -> impl Strategy<Value = (DistributiveLattice, Vec<usize>)> {
    poset(max_n).prop_flat_map(move |p| {
        let l = DistributiveLattice::ideal_lattice(&p);
        let size = l.len();
        (Just(l), proptest::collection::vec(0..size, 0..=max_d))
    })
}

fn sum(l: &DistributiveLattice, gens: &[usize]) -> SemigroupElement {
    gens.iter()
        .fold(SemigroupElement::zero(l.base().len()), |acc, &a| {
            acc.add(&generator_vector(l, a))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_laws(p in poset(5)) {
        let l = DistributiveLattice::ideal_lattice(&p);
        for a in 0..l.len() {
            for b in 0..l.len() {
                prop_assert_eq!(l.join(a, l.meet(a, b)), a);
                prop_assert_eq!(l.meet(a, l.join(a, b)), a);
                for c in 0..l.len() {
                    prop_assert_eq!(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
                }
            }
        }
        prop_assert!(l.birkhoff_roundtrip());
    }

    #[test]
    fn ideals_closed_under_union_and_intersection(p in poset(6)) {
        let ideals = p.order_ideals();
        let set: BTreeSet<u64> = ideals.iter().map(|i| i.bits()).collect();
        for a in &ideals {
            for b in &ideals {
                prop_assert!(set.contains(&a.union(*b).bits()));
                prop_assert!(set.contains(&a.intersection(*b).bits()));
            }
        }
        prop_assert!(set.contains(&OrderIdeal(0).bits()));
    }

    #[test]
    fn boundary_squares_to_zero(cx in complex()) {
        for i in 0..cx.dim().max(0) as usize {
            prop_assert!(boundary_matrix(&cx, i).mul(&boundary_matrix(&cx, i + 1)).is_zero());
        }
    }

    #[test]
    fn euler_characteristic(cx in complex()) {
        let chi: i64 = (-1..=cx.dim())
            .map(|k| {
                let d = reduced_homology_dim(&cx, FieldSpec::Rationals, k).unwrap() as i64;
                if k.rem_euclid(2) == 0 { d } else { -d }
            })
            .sum();
        prop_assert_eq!(chi, reduced_euler_characteristic(&cx));
        for p in [2, 3] {
            let chi_p: i64 = (-1..=cx.dim())
                .map(|k| {
                    let d = reduced_homology_dim(&cx, FieldSpec::Prime(p), k).unwrap() as i64;
                    if k.rem_euclid(2) == 0 { d } else { -d }
                })
                .sum();
            prop_assert_eq!(chi_p, chi);
        }
    }

    #[test]
    fn prime_fields_see_at_least_rational_homology(cx in complex()) {
        for k in -1..=cx.dim() {
            let q = reduced_homology_dim(&cx, FieldSpec::Rationals, k).unwrap();
            for p in [2, 3, 5] {
                prop_assert!(reduced_homology_dim(&cx, FieldSpec::Prime(p), k).unwrap() >= q);
            }
        }
    }

    #[test]
    fn sparse_rank_matches_bareiss(m in matrix()) {
        let sparse = m.to_sparse_rows();
        let r = rank_rational(&sparse);
        prop_assert_eq!(r, bareiss_rank(&m));
        prop_assert_eq!(r, bareiss_rank(&m.transpose()));
        prop_assert!(rank_mod_p(&sparse, 2) <= r);
        prop_assert!(rank_mod_p(&sparse, 7) <= r);
    }

    #[test]
    fn sums_of_generators_are_members((l, gens) in lattice_and_element(4, 4)) {
        let h = sum(&l, &gens);
        let chain = membership(&l, &h);
        prop_assert!(chain.is_some());
        prop_assert_eq!(chain.unwrap().to_element(l.base().len()), h);
    }

    #[test]
    fn divisor_faces_are_completable((l, gens) in lattice_and_element(3, 3)) {
        let h = sum(&l, &gens);
        let cx = divisor_complex(&l, &h, None).unwrap();
        prop_assert!(cx.is_downward_closed());
        for d in 0..=cx.dim().max(-1) {
            for face in cx.faces(d) {
                let rest = h.checked_sub(&sum(&l, &face));
                prop_assert!(rest.is_some_and(|r| membership(&l, &r).is_some()));
            }
        }
        for &g in &gens {
            prop_assert!(cx.contains(&[g]));
        }
    }

    #[test]
    fn quadric_count_is_incomparable_pairs(p in poset(4)) {
        let l = DistributiveLattice::ideal_lattice(&p);
        prop_assert_eq!(
            graded_betti(&l, 1, 2, FieldSpec::Rationals),
            l.incomparable_pairs().len() as u64
        );
    }

    #[test]
    fn initial_ideal_bounds_betti_numbers(p in poset(3)) {
        let l = DistributiveLattice::ideal_lattice(&p);
        for (i, j) in [(1, 2), (2, 3), (2, 4), (3, 4)] {
            let hibi = graded_betti(&l, i, j, FieldSpec::Rationals);
            let initial = hochster_graded_betti(&l, i, j, FieldSpec::Rationals).unwrap();
            prop_assert!(initial >= hibi, "β_{},{}: {} < {}", i, j, initial, hibi);
        }
    }
}
