//! The six reduction rules.
//!
//! Rules 1-3 read only the instance. Rules 4-6 read a working order that
//! the caller has regularized; `B` is that order's cost and stands in for
//! the approximation bound everywhere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{has_t_cycle, t_cycle_vertices, Instance};
use crate::order::{
    affected_arcs, affected_vertices, cost, maximal_nonterminal_intervals, span, IntervalPartition,
    VertexOrder,
};
use crate::reduce::flow::forward_flow;
use crate::reduce::rich::partition_interval;
use crate::reduce::BoundSet;
use crate::regular::is_regular;
use crate::tournament::{Arc, Tournament};

/// Budget spent and a T-cycle remains.
pub fn rule1_trivial_no(inst: &Instance) -> bool {
    inst.budget() == 0 && has_t_cycle(inst)
}

/// No T-cycle at all.
pub fn rule2_trivial_yes(inst: &Instance) -> bool {
    !has_t_cycle(inst)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BypassDeletion {
    pub instance: Instance,
    /// Old ids of the deleted vertices, ascending.
    pub deleted: Vec<usize>,
    /// `kept[new_id] = old_id`.
    pub kept: Vec<usize>,
}

/// Delete every vertex that lies on no T-cycle, all at once.
pub fn rule3_delete_bypassed(inst: &Instance) -> Option<BypassDeletion> {
    let on_cycle = t_cycle_vertices(inst);
    let deleted: Vec<usize> = (0..inst.n()).filter(|&v| !on_cycle[v]).collect();
    if deleted.is_empty() {
        return None;
    }
    let (instance, kept) = inst.delete_vertices(&deleted);
    Some(BypassDeletion {
        instance,
        deleted,
        kept,
    })
}

/// An affected arc carried by more than `k` arc-disjoint forward paths
/// through one of the terminals under it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedArc {
    pub arc: Arc,
    pub terminal: usize,
    pub flow: usize,
}

impl ForcedArc {
    /// Reverse the arc and spend one unit of budget.
    pub fn apply(&self, inst: &Instance) -> Result<Instance> {
        let k = inst.budget().checked_sub(1).ok_or(Error::BudgetExhausted)?;
        let t = inst.tournament().reverse_arc(self.arc)?;
        Ok(inst.with_tournament(t)?.with_budget(k))
    }
}

/// First affected arc (by `(tail, head)`) with a terminal under it (by rank)
/// whose forward flow is at least `k + 1`.
pub fn rule4_force_arc(inst: &Instance, order: &VertexOrder) -> Option<ForcedArc> {
    let need = inst.budget() + 1;
    for arc in affected_arcs(inst, order) {
        let sp = span(order, arc).expect("affected arcs are backward");
        for rank in sp.ranks() {
            let t = order.vertex(rank);
            if !inst.is_terminal(t) {
                continue;
            }
            let flow = forward_flow(inst, order, arc, t).expect("terminal lies in the span");
            if flow >= need {
                return Some(ForcedArc {
                    arc,
                    terminal: t,
                    flow,
                });
            }
        }
    }
    None
}

/// Everything needed to rebuild the instance after a rich-vertex
/// replacement. Vertex ids refer to the instance the plan was made on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RichReplacement {
    pub d: usize,
    pub ell: usize,
    /// Unaffected rich vertices, ascending.
    pub deleted: Vec<usize>,
    /// Out-rich vertices with their number of deleted in-neighbours.
    pub out_rich: Vec<(usize, usize)>,
    /// In-rich vertices with their number of deleted out-neighbours.
    pub in_rich: Vec<(usize, usize)>,
    pub affected_rich: Vec<usize>,
    /// `I_L` and `I_R` in rank order.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Surviving interval vertices in rank order; the fresh block goes
    /// before `middle[insert_at]`.
    pub middle: Vec<usize>,
    pub insert_at: usize,
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
    OutRich(usize),
    InRich(usize),
    AffectedRich,
}

impl RichReplacement {
    /// `true` iff the survivor on `side` beats fresh vertex `i` (0-based).
    fn survivor_beats_fresh(&self, side: Side, i: usize) -> bool {
        let reversed = |count: usize| i >= self.d && i < self.d + count;
        match side {
            Side::Left => true,
            Side::Right => false,
            Side::OutRich(x) => !reversed(x),
            Side::InRich(y) => reversed(y),
            Side::AffectedRich => i >= self.d,
        }
    }

    /// Build the replaced instance. Returns it with `origin[new_id]`, the old
    /// id of each survivor (`None` for fresh vertices).
    pub fn apply(&self, inst: &Instance) -> Result<(Instance, Vec<Option<usize>>)> {
        let n = inst.n();
        let bad = |m: String| Error::Replay(format!("rich replacement: {m}"));
        let mut side: Vec<Option<Side>> = vec![None; n];
        let mut gone = vec![false; n];
        let mut tag = |v: usize, s: Side| -> Result<()> {
            if v >= n || side[v].is_some() {
                return Err(bad(format!("vertex {v} out of range or listed twice")));
            }
            side[v] = Some(s);
            Ok(())
        };
        for &v in &self.left {
            tag(v, Side::Left)?;
        }
        for &v in &self.right {
            tag(v, Side::Right)?;
        }
        for &(v, x) in &self.out_rich {
            tag(v, Side::OutRich(x))?;
        }
        for &(v, y) in &self.in_rich {
            tag(v, Side::InRich(y))?;
        }
        for &v in &self.affected_rich {
            tag(v, Side::AffectedRich)?;
        }
        for &v in &self.deleted {
            if v >= n || side[v].is_some() || gone[v] {
                return Err(bad(format!("deleted vertex {v} invalid")));
            }
            gone[v] = true;
        }
        if self.ell < self.d {
            return Err(bad("fewer fresh vertices than d".into()));
        }
        let max_count = self.ell - self.d;
        if self
            .out_rich
            .iter()
            .chain(&self.in_rich)
            .any(|&(_, c)| c > max_count)
        {
            return Err(bad("reversal count exceeds the fresh block".into()));
        }
        let survivors: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
        if survivors.iter().any(|&v| side[v].is_none()) {
            return Err(bad("a survivor has no role".into()));
        }
        let m = survivors.len();
        let total = m + self.ell;
        let old = inst.tournament();
        let t = Tournament::from_fn(total, |a, b| match (a < m, b < m) {
            (true, true) => old.beats(survivors[a], survivors[b]),
            (true, false) => {
                self.survivor_beats_fresh(side[survivors[a]].expect("checked above"), b - m)
            }
            // a < b, so a fresh and b survivor cannot occur here
            (false, true) => unreachable!("from_fn visits pairs with a < b"),
            (false, false) => true,
        });
        let mut terminals: Vec<bool> = survivors.iter().map(|&v| inst.is_terminal(v)).collect();
        terminals.resize(total, false);
        let origin = survivors
            .iter()
            .map(|&v| Some(v))
            .chain(std::iter::repeat_n(None, self.ell))
            .collect();
        Ok((Instance::from_parts(t, terminals, inst.budget()), origin))
    }

    /// The working order carried over to the replaced instance.
    pub fn carry_order(&self, origin: &[Option<usize>]) -> Result<VertexOrder> {
        let mut new_id = std::collections::HashMap::new();
        let mut fresh = Vec::new();
        for (id, o) in origin.iter().enumerate() {
            match o {
                Some(old) => {
                    new_id.insert(*old, id);
                }
                None => fresh.push(id),
            }
        }
        let map = |v: &usize| {
            new_id
                .get(v)
                .copied()
                .ok_or_else(|| Error::Replay(format!("vertex {v} missing after replacement")))
        };
        let mut seq = Vec::with_capacity(origin.len());
        for v in &self.left {
            seq.push(map(v)?);
        }
        for (i, v) in self.middle.iter().enumerate() {
            if i == self.insert_at {
                seq.extend(&fresh);
            }
            seq.push(map(v)?);
        }
        if self.insert_at >= self.middle.len() {
            seq.extend(&fresh);
        }
        for v in &self.right {
            seq.push(map(v)?);
        }
        VertexOrder::new(seq)
    }
}

/// Plan the replacement on the first maximal non-terminal interval with
/// more than `l_max` vertices. Assumes a regular order of cost at most `b`.
pub(crate) fn plan_rich_replacement(
    inst: &Instance,
    order: &VertexOrder,
    bounds: &BoundSet,
) -> Option<RichReplacement> {
    let interval = maximal_nonterminal_intervals(inst, order)
        .into_iter()
        .find(|iv| iv.len() > bounds.l_max)?;
    let affected = affected_vertices(inst, order);
    let part = partition_interval(inst, order, interval, bounds.d, &affected);
    let t = inst.tournament();
    let mut doomed = vec![false; inst.n()];
    for &v in &part.rich {
        doomed[v] = !affected[v];
    }
    let deleted_count = |v: usize, towards: bool| {
        interval
            .vertices(order)
            .iter()
            .filter(|&&u| doomed[u] && t.beats(v, u) == towards)
            .count()
    };
    let p = IntervalPartition::around(interval, order.len());
    let members = interval.vertices(order);
    // everything before the first doomed vertex survives
    let insert_at = members
        .iter()
        .position(|&v| doomed[v])
        .unwrap_or(members.len());
    let mut deleted: Vec<usize> = members.iter().copied().filter(|&v| doomed[v]).collect();
    deleted.sort_unstable();
    Some(RichReplacement {
        d: bounds.d,
        ell: bounds.ell_new,
        deleted,
        out_rich: part
            .out_rich
            .iter()
            .map(|&u| (u, deleted_count(u, false)))
            .collect(),
        in_rich: part
            .in_rich
            .iter()
            .map(|&w| (w, deleted_count(w, true)))
            .collect(),
        affected_rich: part.affected_rich.clone(),
        left: p.left.vertices(order).to_vec(),
        right: p.right.vertices(order).to_vec(),
        middle: members.iter().copied().filter(|&v| !doomed[v]).collect(),
        insert_at,
    })
}

/// Rules 1-4 all decline on `inst` with `order`.
pub fn is_reduced(inst: &Instance, order: &VertexOrder) -> bool {
    !rule1_trivial_no(inst)
        && !rule2_trivial_yes(inst)
        && rule3_delete_bypassed(inst).is_none()
        && rule4_force_arc(inst, order).is_none()
}

fn check_working_order(inst: &Instance, order: &VertexOrder, bounds: &BoundSet) -> Result<()> {
    if order.len() != inst.n() {
        return Err(Error::PreconditionViolated(
            "order does not cover the instance".into(),
        ));
    }
    if bounds.k != inst.budget() {
        return Err(Error::PreconditionViolated(format!(
            "bounds built for k = {}, instance has k = {}",
            bounds.k,
            inst.budget()
        )));
    }
    if !is_regular(inst, order) {
        return Err(Error::PreconditionViolated(
            "working order is not regular".into(),
        ));
    }
    let c = cost(inst, order);
    if c > bounds.b {
        return Err(Error::PreconditionViolated(format!(
            "order cost {c} exceeds B = {}",
            bounds.b
        )));
    }
    if !is_reduced(inst, order) {
        return Err(Error::PreconditionViolated(
            "instance is not reduced".into(),
        ));
    }
    Ok(())
}

/// Replace the unaffected rich vertices of the first over-long maximal
/// non-terminal interval by `ell_new` fresh vertices. Returns the new
/// instance, the carried-over order, and the plan.
pub fn rule5_rich_replace(
    inst: &Instance,
    order: &VertexOrder,
    bounds: &BoundSet,
) -> Result<Option<(Instance, VertexOrder, RichReplacement)>> {
    check_working_order(inst, order, bounds)?;
    let Some(plan) = plan_rich_replacement(inst, order, bounds) else {
        return Ok(None);
    };
    let (next, origin) = plan.apply(inst)?;
    let carried = plan.carry_order(&origin)?;
    Ok(Some((next, carried, plan)))
}

/// `true` iff the reduced instance has more than `n_max` vertices.
pub fn rule6_size_no(inst: &Instance, order: &VertexOrder, bounds: &BoundSet) -> Result<bool> {
    check_working_order(inst, order, bounds)?;
    if let Some(iv) = maximal_nonterminal_intervals(inst, order)
        .into_iter()
        .find(|iv| iv.len() > bounds.l_max)
    {
        return Err(Error::PreconditionViolated(format!(
            "interval of length {} exceeds l_max = {}",
            iv.len(),
            bounds.l_max
        )));
    }
    Ok(inst.n() > bounds.n_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle(terminals: &[usize], k: usize) -> Instance {
        let t = Tournament::from_arcs(3, [Arc::new(0, 1), Arc::new(1, 2), Arc::new(2, 0)]).unwrap();
        Instance::new(t, terminals.iter().copied(), k).unwrap()
    }

    #[test]
    fn rule1_and_rule2_on_small_cases() {
        assert!(rule1_trivial_no(&three_cycle(&[0], 0)));
        assert!(!rule1_trivial_no(&three_cycle(&[0], 1)));
        let tr = Instance::new(Tournament::transitive(4), [0, 2], 0).unwrap();
        assert!(!rule1_trivial_no(&tr));
        assert!(rule2_trivial_yes(&tr));
        assert!(rule2_trivial_yes(&three_cycle(&[], 0)));
        assert!(!rule2_trivial_yes(&three_cycle(&[1], 3)));
    }

    #[test]
    fn rule3_on_transitive_deletes_everything() {
        let tr = Instance::new(Tournament::transitive(5), [2], 1).unwrap();
        let del = rule3_delete_bypassed(&tr).unwrap();
        assert_eq!(del.deleted, vec![0, 1, 2, 3, 4]);
        assert_eq!(del.instance.n(), 0);
        assert!(rule2_trivial_yes(&del.instance));
    }

    #[test]
    fn rule3_deletes_dominated_sink() {
        // 3-cycle on {0,1,2}, vertex 3 beaten by all
        let t = Tournament::from_fn(4, |u, v| (u, v) != (0, 2));
        let inst = Instance::new(t, [0], 1).unwrap();
        let del = rule3_delete_bypassed(&inst).unwrap();
        assert_eq!(del.deleted, vec![3]);
        assert_eq!(del.kept, vec![0, 1, 2]);
        assert!(rule3_delete_bypassed(&del.instance).is_none());
    }

    #[test]
    fn rule4_fires_at_zero_budget_but_cannot_apply() {
        let inst = three_cycle(&[1], 0);
        let f = rule4_force_arc(&inst, &VertexOrder::identity(3)).unwrap();
        assert_eq!(f.arc, Arc::new(2, 0));
        assert_eq!(f.flow, 1);
        assert_eq!(f.apply(&inst), Err(Error::BudgetExhausted));
        assert!(rule4_force_arc(&three_cycle(&[1], 1), &VertexOrder::identity(3)).is_none());
    }

    #[test]
    fn rule4_planted_long_back_arc() {
        // transitive on 2k + 4 vertices, last -> first, terminal in the middle
        let k = 2;
        let n = 2 * k + 4;
        let t = Tournament::transitive(n)
            .reverse_arc(Arc::new(0, n - 1))
            .unwrap();
        let inst = Instance::new(t, [n / 2], k).unwrap();
        let f = rule4_force_arc(&inst, &VertexOrder::identity(n)).unwrap();
        assert_eq!(f.arc, Arc::new(n - 1, 0));
        assert!(f.flow > k);
        let next = f.apply(&inst).unwrap();
        assert_eq!(next.budget(), k - 1);
        assert!(rule2_trivial_yes(&next));
    }

    #[test]
    fn rule6_formula_boundary() {
        let b = BoundSet::new(0, 1);
        assert_eq!(b.n_max, b.l_max);
    }
}
