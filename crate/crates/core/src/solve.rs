//! Exact oracles and the order providers fed to the kernel.

use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::instance::{order_from_solution, solution_from_order, t_cycle_after_removal, Instance};
use crate::order::VertexOrder;
use crate::reduce::OrderProvider;
use crate::scc::strongly_connected_components;
use crate::tournament::{Arc, ArcSet, Tournament};

/// Largest `n` accepted by [`exact_order`].
pub const ORDER_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub optimum: usize,
    pub witness: ArcSet,
    pub nodes_explored: u64,
}

/// Arcs inside a non-trivial strong component that meets `T`. No other arc
/// lies on a T-cycle, so a minimal solution never uses one.
fn candidate_arcs(inst: &Instance) -> Vec<Arc> {
    let t = inst.tournament();
    let comps = strongly_connected_components(inst.n(), |u, v| t.beats(u, v));
    let mut out = Vec::new();
    for c in comps
        .iter()
        .filter(|c| c.len() >= 2 && c.iter().any(|&v| inst.is_terminal(v)))
    {
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                out.push(t.arc_between(u, v));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Smallest T-feedback arc set of size at most `cap`, by enumerating
/// subsets in order of size.
pub fn exact_subset(inst: &Instance, cap: usize) -> Result<SolveOutcome> {
    let cands = candidate_arcs(inst);
    let mut nodes = 0u64;
    for size in 0..=cap.min(cands.len()) {
        for combo in cands.iter().copied().combinations(size) {
            nodes += 1;
            let s: ArcSet = combo.into_iter().collect();
            if !t_cycle_after_removal(inst, &s) {
                return Ok(SolveOutcome {
                    optimum: size,
                    witness: s,
                    nodes_explored: nodes,
                });
            }
        }
    }
    Err(Error::Infeasible { cap })
}

/// Lexicographically smallest `(t, a, b)` with `t` terminal and
/// `t -> a -> b -> t`.
pub fn first_t_triangle(t: &Tournament, terminals: &[bool]) -> Option<(usize, usize, usize)> {
    let n = t.n();
    (0..n).filter(|&x| terminals[x]).find_map(|x| {
        t.out_neighbors(x).find_map(|a| {
            t.out_neighbors(a)
                .find(|&b| b != x && t.beats(b, x))
                .map(|b| (x, a, b))
        })
    })
}

/// Search for a set of at most `depth` reversals that leaves no T-triangle.
fn branch_to_depth(inst: &Instance, depth: usize, nodes: &mut u64) -> Option<Tournament> {
    let mask = inst.terminal_mask();
    let mut stack = vec![(inst.tournament().clone(), depth)];
    while let Some((cur, left)) = stack.pop() {
        *nodes += 1;
        let Some((x, a, b)) = first_t_triangle(&cur, mask) else {
            return Some(cur);
        };
        if left == 0 {
            continue;
        }
        // pushed in reverse so x -> a is explored first
        for arc in [Arc::new(b, x), Arc::new(a, b), Arc::new(x, a)] {
            let next = cur.reverse_arc(arc).expect("triangle arcs exist");
            stack.push((next, left - 1));
        }
    }
    None
}

/// Optimum by branching on T-triangles, with iterative deepening on the
/// number of reversals. The witness is the set of original arcs whose
/// orientation differs at the first leaf found.
pub fn exact_branch(inst: &Instance) -> SolveOutcome {
    let mut nodes = 0;
    let orig = inst.tournament();
    for depth in 0.. {
        if let Some(leaf) = branch_to_depth(inst, depth, &mut nodes) {
            let witness: ArcSet = orig.arcs().filter(|a| !leaf.has_arc(*a)).collect();
            return SolveOutcome {
                optimum: witness.len(),
                witness,
                nodes_explored: nodes,
            };
        }
    }
    unreachable!("reversing every arc of a cycle eventually clears all T-triangles")
}

/// Cost of the order `seq` without building a [`VertexOrder`].
fn seq_cost(inst: &Instance, seq: &[usize]) -> usize {
    let t = inst.tournament();
    let mut total = 0;
    // last rank at which a terminal was seen
    let mut last_terminal: Option<usize> = None;
    for j in 0..seq.len() {
        if inst.is_terminal(seq[j]) {
            last_terminal = Some(j);
        }
        if let Some(lt) = last_terminal {
            // arc seq[j] -> seq[i] is affected iff some terminal sits in [i, j]
            total += (0..=lt.min(j))
                .filter(|&i| i < j && t.beats(seq[j], seq[i]))
                .count();
        }
    }
    total
}

/// Optimum by trying every order and taking its affected arcs; refuses
/// `n > ORDER_LIMIT`.
pub fn exact_order(inst: &Instance) -> Result<SolveOutcome> {
    let n = inst.n();
    if n > ORDER_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ORDER_LIMIT,
        });
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut nodes = 0u64;
    for perm in (0..n).permutations(n) {
        nodes += 1;
        let c = seq_cost(inst, &perm);
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            best = Some((c, perm));
        }
    }
    let (optimum, seq) = best.expect("at least the empty permutation");
    let order = VertexOrder::new(seq)?;
    Ok(SolveOutcome {
        optimum,
        witness: solution_from_order(inst, &order),
        nodes_explored: nodes,
    })
}

/// In-degree sort followed by first-improvement single-vertex relocation.
pub fn heuristic_order(inst: &Instance) -> VertexOrder {
    let t = inst.tournament();
    let mut seq: Vec<usize> = (0..inst.n()).collect();
    seq.sort_by_key(|&v| (t.in_degree(v), v));
    let mut best = seq_cost(inst, &seq);
    let n = seq.len();
    'improve: while best > 0 {
        for from in 0..n {
            for to in 0..n {
                if from == to {
                    continue;
                }
                let mut cand = seq.clone();
                let v = cand.remove(from);
                cand.insert(to, v);
                let c = seq_cost(inst, &cand);
                if c < best {
                    best = c;
                    seq = cand;
                    continue 'improve;
                }
            }
        }
        break;
    }
    VertexOrder::new(seq).expect("a permutation of 0..n")
}

/// [`heuristic_order`] as a provider.
#[derive(Clone, Copy, Debug, Default)]
pub struct HeuristicProvider;

impl OrderProvider for HeuristicProvider {
    fn name(&self) -> &str {
        "heuristic"
    }

    fn provide(&self, inst: &Instance) -> Vec<usize> {
        heuristic_order(inst).into_sequence()
    }
}

/// An optimal order, built from the [`exact_branch`] witness.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactProvider;

impl OrderProvider for ExactProvider {
    fn name(&self) -> &str {
        "exact"
    }

    fn provide(&self, inst: &Instance) -> Vec<usize> {
        let s = exact_branch(inst).witness;
        order_from_solution(inst, &s)
            .expect("branch witness is a T-feedback set")
            .into_sequence()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProviderKind {
    Heuristic,
    Exact,
}

impl ProviderKind {
    pub fn provider(self) -> Box<dyn OrderProvider + Send + Sync> {
        match self {
            ProviderKind::Heuristic => Box::new(HeuristicProvider),
            ProviderKind::Exact => Box::new(ExactProvider),
        }
    }
}

impl FromStr for ProviderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heuristic" => Ok(ProviderKind::Heuristic),
            "exact" => Ok(ProviderKind::Exact),
            other => Err(Error::BadParameters(format!("unknown provider {other:?}"))),
        }
    }
}
