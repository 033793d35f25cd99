//! SFAST instances, T-cycle detection, and the order/solution equivalence.

use crate::error::{Error, Result};
use crate::order::{affected_arcs, VertexOrder};
use crate::scc::{component_ids, strongly_connected_components};
use crate::tournament::{Arc, ArcSet, Tournament};

/// A tournament, a terminal set, and a budget `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    tournament: Tournament,
    terminals: Vec<bool>,
    budget: usize,
}

impl Instance {
    pub fn new(
        tournament: Tournament,
        terminals: impl IntoIterator<Item = usize>,
        budget: usize,
    ) -> Result<Self> {
        let n = tournament.n();
        let mut mask = vec![false; n];
        for t in terminals {
            if t >= n {
                return Err(Error::VertexOutOfRange { vertex: t, n });
            }
            mask[t] = true;
        }
        Ok(Instance {
            tournament,
            terminals: mask,
            budget,
        })
    }

    pub(crate) fn from_parts(tournament: Tournament, terminals: Vec<bool>, budget: usize) -> Self {
        debug_assert_eq!(tournament.n(), terminals.len());
        Instance {
            tournament,
            terminals,
            budget,
        }
    }

    pub fn tournament(&self) -> &Tournament {
        &self.tournament
    }

    pub fn n(&self) -> usize {
        self.tournament.n()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    #[inline]
    pub fn is_terminal(&self, v: usize) -> bool {
        self.terminals[v]
    }

    pub fn terminal_mask(&self) -> &[bool] {
        &self.terminals
    }

    /// Terminals in ascending id order.
    pub fn terminals(&self) -> impl Iterator<Item = usize> + '_ {
        self.terminals
            .iter()
            .enumerate()
            .filter_map(|(v, &t)| t.then_some(v))
    }

    pub fn terminal_count(&self) -> usize {
        self.terminals.iter().filter(|&&t| t).count()
    }

    pub fn with_budget(&self, budget: usize) -> Instance {
        Instance {
            budget,
            ..self.clone()
        }
    }

    pub fn with_tournament(&self, tournament: Tournament) -> Result<Instance> {
        if tournament.n() != self.n() {
            return Err(Error::PreconditionViolated(format!(
                "replacement tournament has {} vertices, expected {}",
                tournament.n(),
                self.n()
            )));
        }
        Ok(Instance {
            tournament,
            ..self.clone()
        })
    }

    /// Remove `deleted` and compact: survivors keep their relative id order.
    /// Returns the instance and, for each new id, the old id.
    pub fn delete_vertices(&self, deleted: &[usize]) -> (Instance, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in deleted {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        let inst = Instance {
            tournament: self.tournament.induced(&keep),
            terminals: keep.iter().map(|&v| self.terminals[v]).collect(),
            budget: self.budget,
        };
        (inst, keep)
    }
}

/// `true` iff some strong component with at least two vertices meets `T`,
/// in the digraph `D - removed`.
pub(crate) fn t_cycle_after_removal(inst: &Instance, removed: &ArcSet) -> bool {
    let t = inst.tournament();
    let comps = strongly_connected_components(inst.n(), |u, v| {
        t.beats(u, v) && !removed.contains(&Arc::new(u, v))
    });
    comps
        .iter()
        .any(|c| c.len() >= 2 && c.iter().any(|&v| inst.is_terminal(v)))
}

/// `mask[v]` iff `v` lies on a directed cycle through a terminal.
///
/// A strong tournament on at least three vertices has a Hamiltonian cycle,
/// so `v` is on a T-cycle exactly when its strong component is non-trivial
/// and contains a terminal.
pub fn t_cycle_vertices(inst: &Instance) -> Vec<bool> {
    let t = inst.tournament();
    let comps = strongly_connected_components(inst.n(), |u, v| t.beats(u, v));
    let mut mask = vec![false; inst.n()];
    for c in comps {
        if c.len() >= 2 && c.iter().any(|&v| inst.is_terminal(v)) {
            for v in c {
                mask[v] = true;
            }
        }
    }
    mask
}

pub fn in_t_cycle(inst: &Instance, v: usize) -> bool {
    t_cycle_vertices(inst)[v]
}

pub fn has_t_cycle(inst: &Instance) -> bool {
    t_cycle_after_removal(inst, &ArcSet::new())
}

/// The affected arcs of `order`; always a T-feedback arc set.
pub fn solution_from_order(inst: &Instance, order: &VertexOrder) -> ArcSet {
    affected_arcs(inst, order)
}

/// Topologically order the strong components of `D - s`. Every backward
/// arc of the result has both endpoints in one component of `D - s`, so its
/// cost is at most `|s|`.
pub fn order_from_solution(inst: &Instance, s: &ArcSet) -> Result<VertexOrder> {
    let t = inst.tournament();
    if let Some(&bad) = s.iter().find(|&&a| !t.has_arc(a)) {
        return Err(Error::NotAnArc(bad));
    }
    let comps = strongly_connected_components(inst.n(), |u, v| {
        t.beats(u, v) && !s.contains(&Arc::new(u, v))
    });
    if comps
        .iter()
        .any(|c| c.len() >= 2 && c.iter().any(|&v| inst.is_terminal(v)))
    {
        return Err(Error::NotAFeedbackSet);
    }
    let seq: Vec<usize> = comps.into_iter().rev().flatten().collect();
    VertexOrder::new(seq)
}

/// `true` iff `|s| <= k`, every member is an arc, and `D - s` has no T-cycle.
pub fn verify_solution(inst: &Instance, s: &ArcSet) -> bool {
    s.len() <= inst.budget()
        && s.iter().all(|&a| inst.tournament().has_arc(a))
        && !t_cycle_after_removal(inst, s)
}

/// Strong component ids of the tournament, exposed for callers that need
/// the condensation directly.
pub fn strong_component_ids(t: &Tournament) -> (Vec<Vec<usize>>, Vec<usize>) {
    let comps = strongly_connected_components(t.n(), |u, v| t.beats(u, v));
    let ids = component_ids(t.n(), &comps);
    (comps, ids)
}
