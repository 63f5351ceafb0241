mod common;

use proptest::prelude::*;
use transemi::closure::{
    closure_set, f_closure, f_step, find_witness, least_closed_oracle, step_chain, xn_member,
    ClosureMemo,
};
use transemi::generators::random_trans_system;
use transemi::relation::elem_set;
use transemi::representation::{
    eps_pair, rep_relations, simplest_rep, sum_reps, validate_determining_pair, verify_theorem,
};
use transemi::{AbstractSystem, Relation};

fn system(seed: u64, points: usize, maps: usize) -> AbstractSystem {
    random_trans_system(seed, points, maps, 24).unwrap().system.to_abstract()
}

fn subset(m: usize, mask: u64) -> transemi::ElemSet {
    elem_set(m, (0..m).filter(|i| mask >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_a_closure_operator(seed in 0u64..10_000, points in 1usize..4, maps in 1usize..4, a in 1u64.., b in 1u64..) {
        let sys = system(seed, points, maps);
        let m = sys.size();
        let full = (1u64 << m) - 1;
        let (a, b) = ((a & full).max(1), (b & full).max(1));
        let h = subset(m, a);
        let k = subset(m, a | b);
        let fh = closure_set(&sys, &h).unwrap();
        // extensive, idempotent, monotone
        prop_assert!(h.is_subset(&fh));
        prop_assert_eq!(closure_set(&sys, &fh).unwrap(), fh.clone());
        prop_assert!(fh.is_subset(&closure_set(&sys, &k).unwrap()));
        if m <= 10 {
            prop_assert_eq!(least_closed_oracle(&sys, &h, 12).unwrap(), fh);
        }
    }

    #[test]
    fn steps_grow_and_witnesses_admit(seed in 0u64..10_000, points in 1usize..4, maps in 1usize..4, a in 1u64..) {
        let sys = system(seed, points, maps);
        let m = sys.size();
        let h = subset(m, (a & ((1u64 << m) - 1)).max(1));
        let chain = step_chain(&sys, &h, 3).unwrap();
        for w in chain.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]));
        }
        let stepped = f_step(&sys, &h).unwrap();
        for z in stepped.ones() {
            let t = find_witness(&sys, &h, z).unwrap();
            prop_assert!(t.admits(&sys.star(), z));
        }
        let res = f_closure(&sys, &h).unwrap();
        for z in res.closed_set.ones().filter(|&z| !h.contains(z)) {
            prop_assert!(res.witnesses[z].is_some());
        }
        for z in 0..m {
            let deep = xn_member(&sys, z, &h, 3).unwrap();
            prop_assert_eq!(deep.member, chain[3].contains(z));
            if let Some(tree) = deep.tree {
                prop_assert!(tree.verify(&sys, z, &h));
            }
        }
    }

    #[test]
    fn sum_relations_are_intersections(seed in 0u64..10_000, points in 1usize..4, maps in 1usize..3) {
        let sys = system(seed, points, maps);
        let m = sys.size();
        let memo = ClosureMemo::new(&sys);
        let sum = sum_reps(&sys, &memo, false).unwrap();
        prop_assert!(sum.carrier_size() <= m * m * (m + 1));
        let total = rep_relations(&sum);
        let mut zeta = Relation::full(m);
        let mut xi = Relation::full(m);
        let mut delta = Relation::full(m);
        for g1 in 0..m {
            for g2 in 0..m {
                let dp = eps_pair(&sys, &memo, g1, g2).unwrap();
                prop_assert!(validate_determining_pair(&sys, &dp).passed);
                let part = rep_relations(&simplest_rep(&sys, &dp).unwrap());
                zeta = zeta.intersection(&part.zeta);
                xi = xi.intersection(&part.xi);
                delta = delta.intersection(&part.delta);
            }
        }
        prop_assert_eq!(total.zeta, zeta);
        prop_assert_eq!(total.xi, xi);
        prop_assert_eq!(total.delta, delta);
    }
}

#[test]
fn parallel_and_sequential_sums_agree() {
    for seed in 0..5 {
        let sys = system(seed, 3, 2);
        let memo = ClosureMemo::new(&sys);
        assert_eq!(sum_reps(&sys, &memo, true).unwrap(), sum_reps(&sys, &memo, false).unwrap());
        assert_eq!(verify_theorem(&sys, true), verify_theorem(&sys, false));
    }
}

#[test]
fn theorem_on_delta0_and_identity() {
    let ts = transemi::TransSystem::generate(
        &[
            transemi::PartialMap::from_pairs(2, &[(0, 0)]).unwrap(),
            transemi::PartialMap::identity(2),
        ],
        16,
    )
    .unwrap();
    let report = verify_theorem(&ts.to_abstract(), false);
    assert_eq!(report.verdict, "PASS", "{}", report.to_text());
}

#[test]
fn corrupted_xi_fails_validation_first() {
    // dropping a symmetric pair of ξ breaks the order-within-ξ hypothesis when
    // the pair is comparable
    let sys = common::trans_abstract().iter().find(|s| s.size() >= 3).unwrap();
    let (x, y) = sys
        .natural_order()
        .pairs()
        .find(|&(x, y)| x != y)
        .expect("a strict order pair");
    let mut xi = sys.xi_rel().clone();
    xi.remove(x, y);
    xi.remove(y, x);
    let report = verify_theorem(&sys.with_xi(xi), false);
    assert!(report.verdict.starts_with("hypothesis failed: "), "{}", report.verdict);
    assert!(!report.checks.iter().any(|c| c.id.starts_with("rep-")));
}
