//! Vertex orders and the quantities read off them: backward and affected
//! arcs, cost, and the maximal non-terminal intervals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tournament::{Arc, ArcSet, Tournament};

/// A permutation of `0..n` with its inverse. Ranks are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl VertexOrder {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (rank, &v) in seq.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrder(format!(
                    "vertex {v} out of range 0..{n}"
                )));
            }
            if pos[v] != usize::MAX {
                return Err(Error::InvalidOrder(format!("vertex {v} appears twice")));
            }
            pos[v] = rank;
        }
        Ok(VertexOrder { seq, pos })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrder {
            seq: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn into_sequence(self) -> Vec<usize> {
        self.seq
    }

    /// The vertex at `rank`.
    #[inline]
    pub fn vertex(&self, rank: usize) -> usize {
        self.seq[rank]
    }

    /// The rank of vertex `v`.
    #[inline]
    pub fn rank(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// Move the vertex at rank `from` so that it ends up at rank `to`,
    /// shifting everything in between by one.
    pub(crate) fn relocate(&mut self, from: usize, to: usize) {
        let v = self.seq.remove(from);
        self.seq.insert(to, v);
        let (lo, hi) = (from.min(to), from.max(to));
        for r in lo..=hi {
            self.pos[self.seq[r]] = r;
        }
    }
}

/// A half-open rank range `[start, end)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub const fn new(start: usize, end: usize) -> Self {
        Interval { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, rank: usize) -> bool {
        self.start <= rank && rank < self.end
    }

    pub fn ranks(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }

    pub fn vertices<'a>(&self, order: &'a VertexOrder) -> &'a [usize] {
        &order.sequence()[self.start..self.end]
    }
}

/// `(I_L, I, I_R)` around a maximal non-terminal interval `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalPartition {
    pub left: Interval,
    pub middle: Interval,
    pub right: Interval,
}

impl IntervalPartition {
    pub fn around(middle: Interval, n: usize) -> Self {
        IntervalPartition {
            left: Interval::new(0, middle.start),
            middle,
            right: Interval::new(middle.end, n),
        }
    }
}

/// `prefix[r]` = number of terminals at ranks `< r`.
pub(crate) fn terminal_prefix(inst: &Instance, order: &VertexOrder) -> Vec<usize> {
    let mut prefix = Vec::with_capacity(order.len() + 1);
    prefix.push(0);
    let mut acc = 0;
    for &v in order.sequence() {
        acc += usize::from(inst.is_terminal(v));
        prefix.push(acc);
    }
    prefix
}

/// Arcs whose head precedes their tail in `order`.
pub fn backward_arcs(t: &Tournament, order: &VertexOrder) -> ArcSet {
    let seq = order.sequence();
    let mut out = ArcSet::new();
    for j in 0..seq.len() {
        for i in 0..j {
            if t.beats(seq[j], seq[i]) {
                out.insert(Arc::new(seq[j], seq[i]));
            }
        }
    }
    out
}

pub fn backward_count(t: &Tournament, order: &VertexOrder) -> usize {
    let seq = order.sequence();
    (0..seq.len())
        .map(|j| (0..j).filter(|&i| t.beats(seq[j], seq[i])).count())
        .sum()
}

/// Backward arcs whose span (endpoints included) contains a terminal.
pub fn affected_arcs(inst: &Instance, order: &VertexOrder) -> ArcSet {
    let t = inst.tournament();
    let seq = order.sequence();
    let prefix = terminal_prefix(inst, order);
    let mut out = ArcSet::new();
    for j in 0..seq.len() {
        for i in 0..j {
            if t.beats(seq[j], seq[i]) && prefix[j + 1] > prefix[i] {
                out.insert(Arc::new(seq[j], seq[i]));
            }
        }
    }
    out
}

/// Number of affected arcs.
pub fn cost(inst: &Instance, order: &VertexOrder) -> usize {
    let t = inst.tournament();
    let seq = order.sequence();
    let prefix = terminal_prefix(inst, order);
    let mut total = 0;
    for j in 0..seq.len() {
        for i in 0..j {
            if prefix[j + 1] > prefix[i] && t.beats(seq[j], seq[i]) {
                total += 1;
            }
        }
    }
    total
}

/// `mask[v]` iff `v` is an endpoint of an affected arc.
pub fn affected_vertices(inst: &Instance, order: &VertexOrder) -> Vec<bool> {
    let mut mask = vec![false; inst.n()];
    for a in affected_arcs(inst, order) {
        mask[a.tail] = true;
        mask[a.head] = true;
    }
    mask
}

/// Rank-maximal runs of non-terminals, left to right.
pub fn maximal_nonterminal_intervals(inst: &Instance, order: &VertexOrder) -> Vec<Interval> {
    let mut runs = Vec::new();
    let mut start = None;
    for (rank, &v) in order.sequence().iter().enumerate() {
        match (inst.is_terminal(v), start) {
            (true, Some(s)) => {
                runs.push(Interval::new(s, rank));
                start = None;
            }
            (false, None) => start = Some(rank),
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push(Interval::new(s, order.len()));
    }
    runs
}

/// The ranks spanned by backward arc `a`, or `None` if `a` is forward.
pub fn span(order: &VertexOrder, a: Arc) -> Option<Interval> {
    let (rt, rh) = (order.rank(a.tail), order.rank(a.head));
    (rh < rt).then(|| Interval::new(rh, rt + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_rejects_non_permutations() {
        assert!(VertexOrder::new(vec![0, 0]).is_err());
        assert!(VertexOrder::new(vec![0, 2]).is_err());
        let o = VertexOrder::new(vec![2, 0, 1]).unwrap();
        assert_eq!(o.rank(2), 0);
        assert_eq!(o.vertex(2), 1);
    }

    #[test]
    fn relocate_keeps_inverse_in_sync() {
        let mut o = VertexOrder::identity(5);
        o.relocate(0, 3);
        assert_eq!(o.sequence(), &[1, 2, 3, 0, 4]);
        o.relocate(4, 1);
        assert_eq!(o.sequence(), &[1, 4, 2, 3, 0]);
        for r in 0..5 {
            assert_eq!(o.rank(o.vertex(r)), r);
        }
    }

    #[test]
    fn transitive_backward_counts() {
        let t = Tournament::transitive(5);
        assert!(backward_arcs(&t, &VertexOrder::identity(5)).is_empty());
        let rev = VertexOrder::new((0..5).rev().collect()).unwrap();
        assert_eq!(backward_arcs(&t, &rev).len(), 10);
        assert_eq!(backward_count(&t, &rev), 10);
    }

    #[test]
    fn intervals_for_extreme_terminal_sets() {
        let t = Tournament::transitive(4);
        let id = VertexOrder::identity(4);
        let all = Instance::new(t.clone(), 0..4, 0).unwrap();
        assert!(maximal_nonterminal_intervals(&all, &id).is_empty());
        let none = Instance::new(t, [], 0).unwrap();
        assert_eq!(
            maximal_nonterminal_intervals(&none, &id),
            vec![Interval::new(0, 4)]
        );
        assert!(affected_arcs(&none, &VertexOrder::new(vec![3, 2, 1, 0]).unwrap()).is_empty());
    }

    #[test]
    fn partition_around_middle() {
        let p = IntervalPartition::around(Interval::new(2, 5), 7);
        assert_eq!(p.left, Interval::new(0, 2));
        assert_eq!(p.right, Interval::new(5, 7));
        assert!(IntervalPartition::around(Interval::new(0, 7), 7)
            .left
            .is_empty());
    }
}
