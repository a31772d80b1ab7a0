mod common;

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use proptest::prelude::*;

use common::{perm, random_perm, rng, small_groups};
use loopforge_core::catalog::{format_cycles, parse_cycles};
use loopforge_core::folder::is_transversal_to_all_conjugates;
use loopforge_core::{oracle, Catalog, PermGroup, Permutation};

fn elements(g: &PermGroup) -> Vec<Permutation> {
    oracle::closure(g.degree(), g.generators(), 50_000).expect("small group")
}

#[test]
fn chain_orders_match_closure() {
    let mut r = rng(7);
    for g in small_groups(50, 1) {
        let all = elements(&g);
        assert_eq!(g.order(), BigUint::from(all.len()), "{:?}", g.generators());
        let set: HashSet<&Permutation> = all.iter().collect();
        let listed: HashSet<Permutation> = g.elements(100_000).unwrap().into_iter().collect();
        assert_eq!(listed.len(), all.len());
        assert!(listed.iter().all(|p| set.contains(p)));
        for _ in 0..20 {
            let p = random_perm(g.degree(), &mut r);
            assert_eq!(g.contains(&p).unwrap(), set.contains(&p));
        }
    }
}

#[test]
fn stabilizers_match_closure() {
    for g in small_groups(30, 2) {
        let all = elements(&g);
        for points in [vec![0], vec![1, 0], vec![g.degree() - 1]] {
            let expected = all.iter().filter(|p| points.iter().all(|&k| p.fixes(k))).count();
            assert_eq!(g.stabilizer(&points).order(), BigUint::from(expected));
        }
    }
}

fn centralizer_cases() -> Vec<(PermGroup, PermGroup)> {
    let mut r = rng(11);
    let mut groups: Vec<PermGroup> = small_groups(40, 3);
    let catalog = Catalog::embedded();
    for e in catalog.entries() {
        let g = e.group().unwrap();
        if g.order_u64().is_some_and(|o| o <= 5000) {
            groups.push(g);
        }
    }
    let mut cases = Vec::new();
    for g in groups {
        let mut random = g.random_elements(5);
        let one = PermGroup::new(g.degree(), vec![random.next().unwrap()]).unwrap();
        let two = PermGroup::new(g.degree(), vec![random.next().unwrap(), random.next().unwrap()]).unwrap();
        let h = g.stabilizer(&[0]);
        let hi = h.stabilizer(&[g.degree() - 1]);
        let outside = PermGroup::new(g.degree(), vec![random_perm(g.degree(), &mut r)]).unwrap();
        for k in [one, two, hi, outside] {
            cases.push((g.clone(), k));
        }
    }
    cases
}

#[test]
fn centralizers_match_brute_force() {
    for (g, k) in centralizer_cases() {
        let all = elements(&g);
        let expected = oracle::centralizer(&all, k.generators());
        let c = g.centralizer(&k);
        let found: BTreeSet<Permutation> = c.elements(10_000).unwrap().into_iter().collect();
        assert_eq!(found, expected, "G = {:?}, K = {:?}", g.generators(), k.generators());
        let enumerated = g.centralizer_by_enumeration(&k, 10_000).unwrap();
        assert_eq!(enumerated.order(), BigUint::from(expected.len()));
    }
}

#[test]
fn right_cosets_partition_the_group() {
    for g in small_groups(20, 4) {
        let all = elements(&g);
        let h = g.stabilizer(&[0]);
        let mut covered = HashSet::new();
        for x in &all {
            let coset = h.right_coset(x, 100_000).unwrap();
            assert_eq!(BigUint::from(coset.len()), h.order());
            assert!(coset.iter().all(|y| y.image(0) == x.image(0)));
            covered.extend(coset);
        }
        assert_eq!(covered.len(), all.len());
    }
}

#[test]
fn transversal_predicate_matches_brute_force() {
    let mut r = rng(13);
    let mut checked_true = 0;
    for g in small_groups(60, 5).into_iter().filter(PermGroup::is_transitive) {
        let all = elements(&g);
        let d = g.degree();
        let mut systems: Vec<Vec<Permutation>> = oracle::loops_in_group(&g, 50_000)
            .unwrap()
            .into_iter()
            .map(|l| l.translations().0)
            .collect();
        for _ in 0..10 {
            // a random system with 1 r_i = i
            let system = (0..d)
                .map(|i| {
                    let options: Vec<&Permutation> = all.iter().filter(|p| p.image(0) == i).collect();
                    options[rand::Rng::random_range(&mut r, 0..options.len())].clone()
                })
                .collect();
            systems.push(system);
        }
        for rights in systems {
            let fast = is_transversal_to_all_conjugates(&rights);
            assert_eq!(fast, oracle::transversal_to_all_conjugates(&all, &rights));
            checked_true += usize::from(fast);
        }
    }
    assert!(checked_true > 0);
}

fn dihedral(n: usize) -> PermGroup {
    let rotation: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|k| (n - k) % n).collect();
    PermGroup::new(
        n,
        vec![
            Permutation::from_images(rotation).unwrap(),
            Permutation::from_images(reflection).unwrap(),
        ],
    )
    .unwrap()
}

#[test]
fn primitivity_matches_block_search() {
    let mut groups: Vec<PermGroup> = small_groups(80, 6).into_iter().filter(PermGroup::is_transitive).collect();
    for n in 9..=12 {
        groups.push(PermGroup::cyclic(n));
        groups.push(dihedral(n));
    }
    // AGL(1, 11) and the wreath product S_3 wr C_3
    groups.push(
        PermGroup::new(
            11,
            vec![
                Permutation::from_images((0..11).map(|k| (k + 1) % 11).collect()).unwrap(),
                Permutation::from_images((0..11).map(|k| (2 * k) % 11).collect()).unwrap(),
            ],
        )
        .unwrap(),
    );
    groups.push(
        PermGroup::new(
            9,
            vec![
                perm(&[2, 3, 1, 4, 5, 6, 7, 8, 9]),
                perm(&[2, 1, 3, 4, 5, 6, 7, 8, 9]),
                perm(&[4, 5, 6, 7, 8, 9, 1, 2, 3]),
            ],
        )
        .unwrap(),
    );
    let mut primitive = 0;
    for g in groups {
        let all = elements(&g);
        let expected = !oracle::has_nontrivial_blocks(g.degree(), &all);
        assert_eq!(g.is_primitive(), expected, "{:?}", g.generators());
        primitive += usize::from(expected);
    }
    assert!(primitive > 0);
}

#[test]
fn orbit_stabilizer_on_catalog() {
    for e in Catalog::embedded().entries() {
        let g = e.group().unwrap();
        for point in [0, g.degree() - 1] {
            let orbit = g.orbit(point).unwrap();
            let stab = g.stabilizer(&[point]);
            assert_eq!(g.order(), stab.order() * BigUint::from(orbit.len()), "{}", e.name);
        }
    }
}

#[test]
fn solvability_and_transitivity_of_small_symmetric_groups() {
    for n in 2..=4 {
        assert!(PermGroup::symmetric(n).is_solvable());
    }
    assert!(!PermGroup::alternating(5).is_solvable());
    assert!(PermGroup::symmetric(6).is_k_transitive(4));
    assert!(!PermGroup::alternating(6).is_k_transitive(5));
    assert!(PermGroup::alternating(6).is_k_transitive(4));
}

fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn inverse_reverses_products(p in arb_perm(9), q in arb_perm(9)) {
        prop_assert_eq!(p.then(&q).inverse(), q.inverse().then(&p.inverse()));
        prop_assert_eq!(p.then_inverse(&q), p.then(&q.inverse()));
    }

    #[test]
    fn conjugation_is_a_homomorphism(p in arb_perm(8), q in arb_perm(8), h in arb_perm(8)) {
        prop_assert_eq!(p.then(&q).conjugate_by(&h), p.conjugate_by(&h).then(&q.conjugate_by(&h)));
    }

    #[test]
    fn order_annihilates(p in arb_perm(12)) {
        prop_assert!(p.pow(p.order()).is_identity());
        let mut q = Permutation::identity(12);
        for _ in 0..5 { q = q.then(&p); }
        prop_assert_eq!(q, p.pow(5));
    }

    #[test]
    fn cycle_notation_round_trips(p in arb_perm(14)) {
        let text = format_cycles(&p);
        prop_assert_eq!(parse_cycles(&text, 14).unwrap(), p);
    }
}
