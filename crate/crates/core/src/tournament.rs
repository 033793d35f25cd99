//! Tournaments stored as a dense orientation table.
//!
//! Vertices are the dense ids `0..n`. Every unordered pair carries exactly
//! one arc; `beats(u, v)` is an O(1) bit lookup.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A directed arc `tail -> head`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

impl Arc {
    pub const fn new(tail: usize, head: usize) -> Self {
        Arc { tail, head }
    }

    pub const fn reversed(self) -> Self {
        Arc {
            tail: self.head,
            head: self.tail,
        }
    }
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

/// Arcs kept in `(tail, head)` order.
pub type ArcSet = BTreeSet<Arc>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    // bit u * n + v is set iff u -> v
    adj: FixedBitSet,
}

impl Tournament {
    /// Orient every pair `u < v` as `u -> v` when `forward(u, v)` holds and
    /// `v -> u` otherwise.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = FixedBitSet::with_capacity(n * n);
        for u in 0..n {
            for v in u + 1..n {
                if forward(u, v) {
                    adj.insert(u * n + v);
                } else {
                    adj.insert(v * n + u);
                }
            }
        }
        Tournament { n, adj }
    }

    /// The transitive tournament `i -> j` for all `i < j`.
    pub fn transitive(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Validates that `arcs` orients every pair exactly once.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut adj = FixedBitSet::with_capacity(n * n);
        let mut count = 0usize;
        for a in arcs {
            if a.tail >= n || a.head >= n {
                return Err(Error::MalformedTournament(format!(
                    "arc {a:?} has an endpoint outside 0..{n}"
                )));
            }
            if a.tail == a.head {
                return Err(Error::MalformedTournament(format!(
                    "self-loop at {}",
                    a.tail
                )));
            }
            if adj.contains(a.tail * n + a.head) {
                return Err(Error::MalformedTournament(format!("duplicate arc {a:?}")));
            }
            if adj.contains(a.head * n + a.tail) {
                return Err(Error::MalformedTournament(format!(
                    "both orientations of {{{}, {}}} present",
                    a.tail, a.head
                )));
            }
            adj.insert(a.tail * n + a.head);
            count += 1;
        }
        let expected = n * n.saturating_sub(1) / 2;
        if count != expected {
            let missing = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .find(|&(u, v)| !adj.contains(u * n + v) && !adj.contains(v * n + u))
                .expect("count below n(n-1)/2 implies a missing pair");
            return Err(Error::MalformedTournament(format!(
                "pair {{{}, {}}} has no arc",
                missing.0, missing.1
            )));
        }
        Ok(Tournament { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `true` iff `u -> v` is an arc. Irreflexive.
    #[inline]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.adj.contains(u * self.n + v)
    }

    pub fn has_arc(&self, a: Arc) -> bool {
        a.tail < self.n && a.head < self.n && self.beats(a.tail, a.head)
    }

    /// The arc between `u` and `v`, whichever way it points.
    pub fn arc_between(&self, u: usize, v: usize) -> Arc {
        debug_assert_ne!(u, v);
        if self.beats(u, v) {
            Arc::new(u, v)
        } else {
            Arc::new(v, u)
        }
    }

    /// All arcs, ordered by unordered pair `(min, max)`.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| self.arc_between(u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.beats(u, v))
    }

    pub fn in_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.beats(v, u))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.adj.count_ones(u * self.n..(u + 1) * self.n)
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.n - 1 - self.out_degree(u)
    }

    /// Flip the orientation of `a`.
    pub fn reverse_arc(&self, a: Arc) -> Result<Tournament> {
        if !self.has_arc(a) {
            return Err(Error::NotAnArc(a));
        }
        let mut t = self.clone();
        t.set_arc(a.reversed());
        Ok(t)
    }

    /// Orient the pair `{tail, head}` as `tail -> head`.
    pub(crate) fn set_arc(&mut self, a: Arc) {
        self.adj.set(a.head * self.n + a.tail, false);
        self.adj.insert(a.tail * self.n + a.head);
    }

    /// The sub-tournament on `keep`, with `keep[i]` relabelled to `i`.
    pub fn induced(&self, keep: &[usize]) -> Tournament {
        Tournament::from_fn(keep.len(), |i, j| self.beats(keep[i], keep[j]))
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tournament")
            .field("n", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arcs(list: &[(usize, usize)]) -> Vec<Arc> {
        list.iter().map(|&(u, v)| Arc::new(u, v)).collect()
    }

    #[test]
    fn builds_transitive_and_cyclic_triangles() {
        let t = Tournament::from_arcs(3, arcs(&[(0, 1), (1, 2), (0, 2)])).unwrap();
        assert_eq!(t, Tournament::transitive(3));
        let c = Tournament::from_arcs(3, arcs(&[(0, 1), (1, 2), (2, 0)])).unwrap();
        assert!(c.beats(2, 0) && !c.beats(0, 2));
        assert_eq!(c.out_degree(0), 1);
        assert_eq!(c.in_degree(0), 1);
    }

    #[test]
    fn rejects_malformed_inputs() {
        let missing = Tournament::from_arcs(3, arcs(&[(0, 1), (1, 2)]));
        assert!(matches!(missing, Err(Error::MalformedTournament(m)) if m.contains("{0, 2}")));
        assert!(Tournament::from_arcs(2, arcs(&[(0, 1), (0, 1)])).is_err());
        assert!(Tournament::from_arcs(2, arcs(&[(0, 1), (1, 0)])).is_err());
        assert!(Tournament::from_arcs(2, arcs(&[(0, 0)])).is_err());
        assert!(Tournament::from_arcs(2, arcs(&[(0, 2)])).is_err());
    }

    #[test]
    fn reverse_arc_flips_one_pair() {
        let t = Tournament::transitive(3);
        let r = t.reverse_arc(Arc::new(0, 1)).unwrap();
        assert!(r.beats(1, 0) && r.beats(0, 2) && r.beats(1, 2));
        assert_eq!(r.reverse_arc(Arc::new(1, 0)).unwrap(), t);
        assert_eq!(
            t.reverse_arc(Arc::new(1, 0)),
            Err(Error::NotAnArc(Arc::new(1, 0)))
        );
    }

    #[test]
    fn induced_relabels() {
        let c = Tournament::from_arcs(3, arcs(&[(0, 1), (1, 2), (2, 0)])).unwrap();
        let sub = c.induced(&[2, 0]);
        assert_eq!(sub.n(), 2);
        assert!(sub.beats(0, 1));
    }
}
