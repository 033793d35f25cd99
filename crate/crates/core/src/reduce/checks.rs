//! Structural facts a reduced instance with a regular order must satisfy.
//! Each returns the witnesses of a violation; empty means the fact holds.

use crate::instance::Instance;
use crate::order::{
    affected_arcs, affected_vertices, maximal_nonterminal_intervals, span, IntervalPartition,
    VertexOrder,
};
use crate::reduce::BoundSet;
use crate::tournament::Arc;

/// Terminals under an affected span that sit more than `ell_loc` ranks away
/// from both endpoints of the span.
pub fn terminal_location_violations(
    inst: &Instance,
    order: &VertexOrder,
    bounds: &BoundSet,
) -> Vec<(Arc, usize)> {
    let mut bad = Vec::new();
    for arc in affected_arcs(inst, order) {
        let sp = span(order, arc).expect("affected arcs are backward");
        let (l, r) = (sp.start, sp.end - 1);
        for rank in sp.ranks() {
            let v = order.vertex(rank);
            if inst.is_terminal(v) && rank > l + bounds.ell_loc && rank + bounds.ell_loc < r {
                bad.push((arc, v));
            }
        }
    }
    bad
}

/// `(v, u)` pairs where `v` is an unaffected vertex of a maximal
/// non-terminal interval and `u` in `I_L` does not beat it, or `u` in
/// `I_R` is not beaten by it.
pub fn unaffected_neighborhood_violations(
    inst: &Instance,
    order: &VertexOrder,
) -> Vec<(usize, usize)> {
    let t = inst.tournament();
    let affected = affected_vertices(inst, order);
    let mut bad = Vec::new();
    for iv in maximal_nonterminal_intervals(inst, order) {
        let p = IntervalPartition::around(iv, order.len());
        for &v in iv.vertices(order) {
            if affected[v] {
                continue;
            }
            for &u in p.left.vertices(order) {
                if !t.beats(u, v) {
                    bad.push((v, u));
                }
            }
            for &u in p.right.vertices(order) {
                if !t.beats(v, u) {
                    bad.push((v, u));
                }
            }
        }
    }
    bad
}
