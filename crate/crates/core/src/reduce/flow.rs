//! Unit-capacity max flow over the forward arcs of an order.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::order::{span, VertexOrder};
use crate::tournament::Arc;

/// Max number of arc-disjoint `source -> sink` paths in the digraph on
/// `0..n` with unit capacity on every arc `has_arc(u, v)`.
pub fn unit_max_flow(
    n: usize,
    has_arc: impl Fn(usize, usize) -> bool,
    source: usize,
    sink: usize,
) -> usize {
    if source == sink {
        return 0;
    }
    // residual[u * n + v]
    let mut residual: Vec<i32> = (0..n * n)
        .map(|i| i32::from(i / n != i % n && has_arc(i / n, i % n)))
        .collect();
    let mut flow = 0;
    let mut parent = vec![usize::MAX; n];
    loop {
        parent.fill(usize::MAX);
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for v in 0..n {
                if parent[v] == usize::MAX && residual[u * n + v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return flow;
        }
        let mut v = sink;
        while v != source {
            let u = parent[v];
            residual[u * n + v] -= 1;
            residual[v * n + u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// Number of arc-disjoint forward paths from the head of backward arc `e`
/// through terminal `t` to its tail. When `t` is an endpoint of the span the
/// corresponding half is the trivial path.
pub fn forward_flow(inst: &Instance, order: &VertexOrder, e: Arc, t: usize) -> Result<usize> {
    let tour = inst.tournament();
    if !tour.has_arc(e) {
        return Err(Error::NotAnArc(e));
    }
    let sp = span(order, e).ok_or(Error::NotBackward(e))?;
    if !inst.is_terminal(t) || !sp.contains(order.rank(t)) {
        return Err(Error::TerminalNotInSpan {
            arc: e,
            terminal: t,
        });
    }
    let forward = |u: usize, v: usize| order.rank(u) < order.rank(v) && tour.beats(u, v);
    let n = inst.n();
    let (left, right) = (e.head, e.tail);
    Ok(if t == left || t == right {
        unit_max_flow(n, forward, left, right)
    } else {
        unit_max_flow(n, forward, left, t).min(unit_max_flow(n, forward, t, right))
    })
}
