use proptest::prelude::*;

use loopforge_core::isofilter::{are_isomorphic, filter_up_to_isomorphism, find_isomorphism, fingerprint};
use loopforge_core::search::{search_targets, Mode, SearchOptions, SearchTarget};
use loopforge_core::{oracle, Catalog, LoopTable, Permutation};

#[test]
fn isomorphism_classes_of_small_loops() {
    // known counts of loops up to isomorphism for orders 1..=6
    let counts: Vec<usize> = (1..=6)
        .map(|n| filter_up_to_isomorphism(&oracle::all_loops(n)).len())
        .collect();
    assert_eq!(counts, vec![1, 1, 1, 2, 6, 109]);
}

#[test]
fn representatives_are_least_tables() {
    let all = oracle::all_loops(5);
    let reps = filter_up_to_isomorphism(&all);
    for r in &reps {
        assert!(all.iter().filter(|l| are_isomorphic(l, r)).all(|l| r <= l));
    }
    let mut sorted = reps.clone();
    sorted.sort();
    assert_eq!(sorted, reps);
}

#[test]
fn order_60_loops_are_pairwise_non_isomorphic() {
    let catalog = Catalog::embedded();
    let targets: Vec<SearchTarget> = catalog
        .groups_of_degree(60, false)
        .into_iter()
        .map(|e| SearchTarget::from_entry(e, None).unwrap())
        .collect();
    let reports = search_targets(&targets, &SearchOptions::for_mode(Mode::RightAutomorphic));
    let loops: Vec<LoopTable> = reports
        .iter()
        .flat_map(|r| &r.loops)
        .filter(|l| l.is_simple_non_associative())
        .map(|l| l.table.clone())
        .collect();
    let reps = filter_up_to_isomorphism(&loops);
    assert_eq!(reps.len(), 5);
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            assert!(fingerprint(a) != fingerprint(b) || !are_isomorphic(a, b));
        }
    }
    // every input is isomorphic to exactly one representative
    for l in &loops {
        assert_eq!(reps.iter().filter(|r| are_isomorphic(r, l)).count(), 1);
    }
}

fn corpus() -> Vec<LoopTable> {
    (4..=6).flat_map(oracle::all_loops).collect()
}

/// A relabeling fixing the neutral element.
fn arb_relabeling(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|rest| Permutation::from_images(std::iter::once(0).chain(rest).collect()).unwrap())
}

fn arb_loop_and_relabeling() -> impl Strategy<Value = (LoopTable, Permutation)> {
    let loops = corpus();
    (0..loops.len()).prop_flat_map(move |i| {
        let l = loops[i].clone();
        let n = l.order();
        (Just(l), arb_relabeling(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relabeling_preserves_isomorphism_class((l, phi) in arb_loop_and_relabeling()) {
        let other = l.relabel(&phi).unwrap();
        prop_assert_eq!(fingerprint(&l), fingerprint(&other));
        let witness = find_isomorphism(&l, &other).unwrap();
        prop_assert!(witness.fixes(0));
        prop_assert_eq!(l.relabel(&witness).unwrap(), other.clone());
        let back = find_isomorphism(&other, &l).unwrap();
        prop_assert_eq!(other.relabel(&back).unwrap(), l.clone());
        prop_assert_eq!(filter_up_to_isomorphism(&[other, l]).len(), 1);
    }

    #[test]
    fn isomorphism_is_symmetric(i in 0usize..9408, j in 0usize..9408) {
        let loops = oracle::all_loops(6);
        let (a, b) = (&loops[i], &loops[j]);
        prop_assert_eq!(are_isomorphic(a, b), are_isomorphic(b, a));
        prop_assert!(are_isomorphic(a, a));
    }
}
