//! Regular orders and the local search that produces them.
//!
//! An order is regular when, for every contiguous run of non-terminals
//! `[l, r]` (not only the maximal ones), the vertex at `l` beats at least
//! `ceil((r - l) / 2)` of the run and the vertex at `r` loses to at least
//! that many.

use crate::instance::Instance;
use crate::order::{backward_count, maximal_nonterminal_intervals, VertexOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularizationReport {
    pub result: VertexOrder,
    pub moves: usize,
    pub backward_before: usize,
    pub backward_after: usize,
}

pub fn is_regular(inst: &Instance, order: &VertexOrder) -> bool {
    let t = inst.tournament();
    let seq = order.sequence();
    for run in maximal_nonterminal_intervals(inst, order) {
        // left endpoints: out-neighbours of seq[l] inside [l, r]
        for l in run.ranks() {
            let mut out = 0;
            for r in l + 1..run.end {
                out += usize::from(t.beats(seq[l], seq[r]));
                if out < (r - l).div_ceil(2) {
                    return false;
                }
            }
        }
        // right endpoints: in-neighbours of seq[r] inside [l, r]
        for r in run.ranks() {
            let mut inn = 0;
            for l in (run.start..r).rev() {
                inn += usize::from(t.beats(seq[l], seq[r]));
                if inn < (r - l).div_ceil(2) {
                    return false;
                }
            }
        }
    }
    true
}

enum Move {
    /// move rank `l` to just after rank `r`
    LeftPastRight { l: usize, r: usize },
    /// move rank `r` to just before rank `l`
    RightBeforeLeft { l: usize, r: usize },
}

/// First applicable move, scanning intervals by left endpoint then length.
fn find_move(inst: &Instance, order: &VertexOrder) -> Option<Move> {
    let t = inst.tournament();
    let seq = order.sequence();
    for run in maximal_nonterminal_intervals(inst, order) {
        if run.len() < 2 {
            continue;
        }
        // in_prefix[j][i - run.start] = in-neighbours of seq[j] among ranks run.start..i
        let width = run.len() + 1;
        let mut in_prefix = vec![0usize; run.len() * width];
        for j in run.ranks() {
            let row = (j - run.start) * width;
            for i in run.ranks() {
                in_prefix[row + i - run.start + 1] =
                    in_prefix[row + i - run.start] + usize::from(t.beats(seq[i], seq[j]));
            }
        }
        for l in run.ranks() {
            let mut out_l = 0;
            for r in l + 1..run.end {
                let len_minus_one = r - l;
                out_l += usize::from(t.beats(seq[l], seq[r]));
                if out_l < len_minus_one - out_l {
                    return Some(Move::LeftPastRight { l, r });
                }
                let row = (r - run.start) * width;
                let in_r = in_prefix[row + r - run.start] - in_prefix[row + l - run.start];
                if in_r < len_minus_one - in_r {
                    return Some(Move::RightBeforeLeft { l, r });
                }
            }
        }
    }
    None
}

/// Local search to a regular order with the same cost, the same terminal
/// ranks, and no more backward arcs. Every move strictly lowers the
/// backward-arc count.
pub fn regularize(inst: &Instance, order: &VertexOrder) -> RegularizationReport {
    let t = inst.tournament();
    let backward_before = backward_count(t, order);
    let mut current = order.clone();
    let mut moves = 0;
    while let Some(mv) = find_move(inst, &current) {
        match mv {
            Move::LeftPastRight { l, r } => current.relocate(l, r),
            Move::RightBeforeLeft { l, r } => current.relocate(r, l),
        }
        moves += 1;
        debug_assert!(moves <= backward_before);
    }
    let backward_after = backward_count(t, &current);
    RegularizationReport {
        result: current,
        moves,
        backward_before,
        backward_after,
    }
}
