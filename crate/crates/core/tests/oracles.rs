mod common;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use sfast_core::format::parse_instance;
use sfast_core::generate::{generate, GenParams, Model};
use sfast_core::solve::{exact_branch, exact_order, exact_subset, heuristic_order};
use sfast_core::{
    cost, has_t_cycle, order_from_solution, solution_from_order, verify_solution, ArcSet,
    VertexOrder,
};

use common::{brute_t_cycle, random_instance, rng};

const GOLDEN: &str = include_str!("fixtures/golden15.sfast");

#[test]
fn scc_test_matches_cycle_enumeration() {
    let mut r = rng(1);
    for _ in 0..300 {
        let inst = random_instance(&mut r, 1, 7, 0);
        assert_eq!(has_t_cycle(&inst), brute_t_cycle(&inst, &ArcSet::new()));
        let arcs: Vec<_> = inst.tournament().arcs().collect();
        let removed: ArcSet = arcs
            .choose_multiple(&mut r, arcs.len().min(3))
            .copied()
            .collect();
        let big = inst.with_budget(removed.len());
        assert_eq!(
            verify_solution(&big, &removed),
            !brute_t_cycle(&inst, &removed)
        );
    }
}

#[test]
fn orders_and_solutions_correspond() {
    let mut r = rng(2);
    for _ in 0..200 {
        let inst = random_instance(&mut r, 1, 8, 0);
        let mut seq: Vec<usize> = (0..inst.n()).collect();
        seq.shuffle(&mut r);
        let order = VertexOrder::new(seq).unwrap();
        let s = solution_from_order(&inst, &order);
        assert_eq!(s.len(), cost(&inst, &order));
        assert!(verify_solution(&inst.with_budget(s.len()), &s));
        let back = order_from_solution(&inst, &s).unwrap();
        assert!(cost(&inst, &back) <= s.len());
    }
}

#[test]
fn triple_oracle_agreement() {
    let mut r = rng(3);
    for _ in 0..300 {
        let inst = random_instance(&mut r, 1, 7, 0);
        let sub = exact_subset(&inst, 21).unwrap();
        let br = exact_branch(&inst);
        let ord = exact_order(&inst).unwrap();
        assert_eq!(sub.optimum, br.optimum);
        assert_eq!(sub.optimum, ord.optimum);
        for w in [&sub.witness, &br.witness, &ord.witness] {
            assert!(verify_solution(&inst.with_budget(sub.optimum), w));
        }
        if sub.optimum > 0 {
            assert!(exact_subset(&inst, sub.optimum - 1).is_err());
        }
    }
}

#[test]
fn branch_agrees_on_nine_vertices() {
    let mut r = rng(4);
    for _ in 0..60 {
        let inst = random_instance(&mut r, 8, 9, 0);
        let br = exact_branch(&inst);
        if br.optimum <= 3 {
            assert_eq!(exact_subset(&inst, 3).unwrap().optimum, br.optimum);
        } else {
            assert!(exact_subset(&inst, 3).is_err());
        }
    }
}

#[test]
fn heuristic_is_a_valid_upper_bound() {
    let mut r = rng(5);
    for _ in 0..200 {
        let inst = random_instance(&mut r, 1, 8, 0);
        let h = heuristic_order(&inst);
        assert_eq!(h.len(), inst.n());
        assert!(cost(&inst, &h) >= exact_order(&inst).unwrap().optimum);
    }
}

#[test]
fn all_terminals_is_plain_fast() {
    let mut r = rng(6);
    for _ in 0..50 {
        let n = r.random_range(3..=7);
        let inst = generate(&GenParams {
            model: Model::Uniform,
            n,
            k: 0,
            tfrac: 1.0,
            s: 0,
            seed: r.random(),
        })
        .unwrap();
        // plain FAS: minimum backward arcs over all orders
        let opt = exact_order(&inst).unwrap().optimum;
        let best = itertools::Itertools::permutations(0..n, n)
            .map(|p| sfast_core::backward_count(inst.tournament(), &VertexOrder::new(p).unwrap()))
            .min()
            .unwrap();
        assert_eq!(opt, best);
    }
}

#[test]
fn planted_optimum_at_most_s() {
    for seed in 0..30 {
        let inst = generate(&GenParams {
            model: Model::Planted,
            n: 8,
            k: 2,
            tfrac: 1.0,
            s: 2,
            seed,
        })
        .unwrap();
        assert!(exact_subset(&inst, 2).is_ok());
    }
}

#[test]
fn golden_optimum() {
    let inst = parse_instance(GOLDEN).unwrap();
    let sub = exact_subset(&inst, 3).unwrap();
    assert_eq!(sub.optimum, 3);
    assert_eq!(exact_branch(&inst).optimum, 3);
}
