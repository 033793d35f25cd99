mod common;

use rand::Rng;
use sfast_core::reduce::{
    is_reduced, replay, rule5_rich_replace, rule6_size_no, KernelStatus, RuleAction,
};
use sfast_core::solve::{exact_branch, exact_subset, ExactProvider, HeuristicProvider};
use sfast_core::{cost, is_regular, kernelize, BoundSet, Instance, Tournament, VertexOrder};

use common::{long_interval, rng};

fn answer(inst: &Instance) -> bool {
    exact_branch(inst).optimum <= inst.budget()
}

#[test]
fn long_interval_preconditions() {
    let inst = Instance::new(long_interval(40), [0, 41], 1).unwrap();
    let id = VertexOrder::identity(42);
    assert_eq!(cost(&inst, &id), 2);
    assert!(is_regular(&inst, &id));
    assert!(is_reduced(&inst, &id));
    assert_eq!(exact_subset(&inst, 2).unwrap().optimum, 1);
}

#[test]
fn replacement_shrinks_and_keeps_answer() {
    for k in [1, 2] {
        let bounds = BoundSet::new(2, k);
        let m = bounds.l_max + 5;
        let inst = Instance::new(long_interval(m), [0, m + 1], k).unwrap();
        let id = VertexOrder::identity(m + 2);
        let (next, carried, plan) = rule5_rich_replace(&inst, &id, &bounds).unwrap().unwrap();
        assert_eq!(plan.ell, bounds.ell_new);
        assert!(next.n() < inst.n());
        assert_eq!(next.budget(), k);
        assert_eq!(next.terminal_count(), 2);
        assert_eq!(carried.len(), next.n());
        assert_eq!(answer(&inst), answer(&next));
        // with one unit less budget both sides must agree as well
        let tight = |i: &Instance| i.with_budget(k - 1);
        assert_eq!(answer(&tight(&inst)), answer(&tight(&next)));
    }
}

#[test]
fn fresh_block_wiring() {
    let k = 1;
    let bounds = BoundSet::new(2, k);
    let m = bounds.l_max + 1;
    let inst = Instance::new(long_interval(m), [0, m + 1], k).unwrap();
    let id = VertexOrder::identity(m + 2);
    let (next, carried, plan) = rule5_rich_replace(&inst, &id, &bounds).unwrap().unwrap();
    let t = next.tournament();
    let survivors = next.n() - plan.ell;
    let fresh: Vec<usize> = (survivors..next.n()).collect();
    for w in fresh.windows(2) {
        assert!(t.beats(w[0], w[1]));
    }
    // terminals: t1 = left of the interval, t2 = right
    for &f in &fresh {
        assert!(t.beats(0, f));
        assert!(t.beats(f, survivors - 1));
    }
    // survivor arcs are untouched
    let kept: Vec<usize> = (0..inst.n())
        .filter(|v| !plan.deleted.contains(v))
        .collect();
    for (a, &u) in kept.iter().enumerate() {
        for (b, &v) in kept.iter().enumerate() {
            if u != v {
                assert_eq!(t.beats(a, b), inst.tournament().beats(u, v));
            }
        }
    }
    // each out-rich u beats all fresh vertices except x of them
    for &(u, x) in &plan.out_rich {
        let nu = kept.iter().position(|&v| v == u).unwrap();
        assert_eq!(fresh.iter().filter(|&&f| t.beats(f, nu)).count(), x);
    }
    for &(w, y) in &plan.in_rich {
        let nw = kept.iter().position(|&v| v == w).unwrap();
        assert_eq!(fresh.iter().filter(|&&f| t.beats(nw, f)).count(), y);
    }
    // the carried order puts the block inside the interval
    assert_eq!(carried.vertex(0), 0);
    assert_eq!(carried.vertex(carried.len() - 1), survivors - 1);
    // an interval of l_max is left alone
    let short = Instance::new(long_interval(bounds.l_max), [0, bounds.l_max + 1], k).unwrap();
    let sid = VertexOrder::identity(bounds.l_max + 2);
    assert_eq!(rule5_rich_replace(&short, &sid, &bounds).unwrap(), None);
    assert_eq!(rule6_size_no(&short, &sid, &bounds), Ok(false));
}

/// Perturb arcs near the two terminals, keep only reduced instances with a
/// regular identity order, and check the replacement against the oracle.
#[test]
fn randomized_replacement_safety() {
    let mut r = rng(2024);
    let mut checked = 0;
    let mut yes = 0;
    for _ in 0..400 {
        let k = r.random_range(1..=2);
        let m = 7 * 4 + 13 * k + 8 + r.random_range(0..8);
        let n = m + 2;
        let mut t = long_interval(m);
        // zone: t1, first three and last three of the interval, t2
        let zone: Vec<usize> = [0, 1, 2, 3, m - 2, m - 1, m, m + 1].to_vec();
        for _ in 0..r.random_range(1..=4) {
            let u = zone[r.random_range(0..zone.len())];
            let v = zone[r.random_range(0..zone.len())];
            if u != v {
                t = t.reverse_arc(t.arc_between(u, v)).unwrap();
            }
        }
        let inst = Instance::new(t, [0, m + 1], k).unwrap();
        let id = VertexOrder::identity(n);
        let b = cost(&inst, &id);
        if b > 4 || !is_regular(&inst, &id) || !is_reduced(&inst, &id) {
            continue;
        }
        let bounds = BoundSet::new(b, k);
        if m <= bounds.l_max {
            continue;
        }
        let (next, _, _) = rule5_rich_replace(&inst, &id, &bounds).unwrap().unwrap();
        let before = answer(&inst);
        assert_eq!(before, answer(&next), "k = {k}, m = {m}");
        checked += 1;
        yes += usize::from(before);
    }
    assert!(checked >= 50, "only {checked} usable instances");
    assert!(yes > 0);
}

#[test]
fn kernelize_fires_rich_rule() {
    let m = 60;
    let inst = Instance::new(long_interval(m), [0, m + 1], 1).unwrap();
    for provider in [
        &HeuristicProvider as &dyn sfast_core::OrderProvider,
        &ExactProvider,
    ] {
        let out = kernelize(&inst, provider).unwrap();
        assert!(out
            .trace
            .iter()
            .any(|r| matches!(r.action, RuleAction::ReplaceRich { .. })));
        match &out.status {
            KernelStatus::Reduced(red) => {
                assert!(red.n() < inst.n());
                assert!(red.n() <= out.bounds.unwrap().n_max);
                assert_eq!(answer(red), answer(&inst));
            }
            KernelStatus::TrivialYes => assert!(answer(&inst)),
            KernelStatus::TrivialNo => assert!(!answer(&inst)),
        }
        assert_eq!(replay(&inst, &out.trace).unwrap(), out.status);
    }
}

#[test]
fn plan_rejects_bad_input() {
    let bounds = BoundSet::new(2, 1);
    let inst = Instance::new(Tournament::transitive(3), [0], 1).unwrap();
    // transitive: not reduced
    assert!(rule5_rich_replace(&inst, &VertexOrder::identity(3), &bounds).is_err());
    let m = bounds.l_max + 1;
    let long = Instance::new(long_interval(m), [0, m + 1], 1).unwrap();
    let (_, _, mut plan) = rule5_rich_replace(&long, &VertexOrder::identity(m + 2), &bounds)
        .unwrap()
        .unwrap();
    plan.deleted.push(0);
    assert!(plan.apply(&long).is_err());
}
