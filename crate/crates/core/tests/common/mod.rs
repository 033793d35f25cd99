#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfast_core::generate::{generate, GenParams, Model};
use sfast_core::{ArcSet, Instance, Tournament};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random instance with `n` in `n_lo..=n_hi`, `k` in `0..=k_hi`, either
/// model, and a random terminal fraction.
pub fn random_instance(rng: &mut ChaCha8Rng, n_lo: usize, n_hi: usize, k_hi: usize) -> Instance {
    let n = rng.random_range(n_lo..=n_hi);
    let model = if rng.random_bool(0.5) {
        Model::Uniform
    } else {
        Model::Planted
    };
    let pairs = n * n.saturating_sub(1) / 2;
    generate(&GenParams {
        model,
        n,
        k: rng.random_range(0..=k_hi),
        tfrac: rng.random_range(0.0..=1.0),
        s: rng.random_range(0..=4).min(pairs),
        seed: rng.random(),
    })
    .unwrap()
}

/// Does `D - removed` have a directed cycle through a terminal? Plain
/// DFS over simple paths; only for small `n`.
pub fn brute_t_cycle(inst: &Instance, removed: &ArcSet) -> bool {
    let t = inst.tournament();
    let n = inst.n();
    let edge = |u: usize, v: usize| {
        u != v && t.beats(u, v) && !removed.contains(&sfast_core::Arc::new(u, v))
    };
    fn walk(
        start: usize,
        cur: usize,
        seen: &mut Vec<bool>,
        n: usize,
        edge: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        for next in 0..n {
            if !edge(cur, next) {
                continue;
            }
            if next == start {
                return true;
            }
            if !seen[next] {
                seen[next] = true;
                if walk(start, next, seen, n, edge) {
                    return true;
                }
                seen[next] = false;
            }
        }
        false
    }
    inst.terminals().any(|s| {
        let mut seen = vec![false; n];
        seen[s] = true;
        walk(s, s, &mut seen, n, &edge)
    })
}

/// Terminal `t1`, then `m` non-terminals ordered transitively except that
/// the last beats the first, then terminal `t2`. The first non-terminal
/// beats `t1`, `t2` beats the last non-terminal, and `t1` beats `t2`.
/// Under the identity order this costs 2 and every forward flow is 0.
pub fn long_interval(m: usize) -> Tournament {
    let n = m + 2;
    let (first, last, t2) = (1, m, m + 1);
    Tournament::from_fn(n, |u, v| {
        ![(0, first), (first, last), (last, t2)].contains(&(u, v))
    })
}
