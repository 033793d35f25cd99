use serde::{Deserialize, Serialize};

/// Every threshold the rich-vertex rules need, as functions of the working
/// order's cost `b` and the budget `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundSet {
    /// Cost of the working regular order.
    pub b: usize,
    pub k: usize,
    /// Rich threshold: `b + 2k + 1`.
    pub d: usize,
    /// Terminal-location radius: `2b + 2k + 2`.
    pub ell_loc: usize,
    /// Fresh vertices inserted by the replacement rule: `2d + k + 1`.
    pub ell_new: usize,
    /// Interval length after replacement: `4d + b + ell_new`.
    pub l_max: usize,
    /// NO threshold on the vertex count: `(2b + 1) l_max + b (2 ell_loc + 2)`.
    pub n_max: usize,
}

impl BoundSet {
    pub fn new(b: usize, k: usize) -> Self {
        let d = b + 2 * k + 1;
        let ell_loc = 2 * b + 2 * k + 2;
        let ell_new = 2 * d + k + 1;
        let l_max = 4 * d + b + ell_new;
        let n_max = (2 * b + 1) * l_max + b * (2 * ell_loc + 2);
        BoundSet {
            b,
            k,
            d,
            ell_loc,
            ell_new,
            l_max,
            n_max,
        }
    }

    /// Longest affected span a reduced instance can have.
    pub fn max_span(&self) -> usize {
        self.l_max + 2 * (self.ell_loc + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_with_b_equal_alpha_k() {
        for alpha in 1..6 {
            for k in 0..8 {
                let b = BoundSet::new(alpha * k, k);
                assert_eq!(b.d, (alpha + 2) * k + 1);
                assert_eq!(b.ell_loc, 2 * (alpha + 1) * k + 2);
                assert_eq!(b.ell_new, 2 * b.d + k + 1);
                assert_eq!(b.l_max, (7 * alpha + 13) * k + 7);
                let l = b.l_max;
                assert_eq!(
                    b.n_max,
                    (2 * alpha * k + 1) * l + 4 * (alpha + 1) * alpha * k * k + 6 * alpha * k
                );
                assert_eq!(b.max_span(), l + 4 * (alpha + 1) * k + 6);
            }
        }
    }

    #[test]
    fn zero_cost_collapses_to_interval_bound() {
        let b = BoundSet::new(0, 3);
        assert_eq!(b.n_max, b.l_max);
        assert_eq!(b.d, 7);
        assert_eq!(b.ell_new, 18);
        assert_eq!(b.l_max, 46);
    }

    #[test]
    fn replacement_always_shrinks() {
        // |I| >= l_max + 1 and at most 4d + b non-deletable vertices
        for b in 0..20 {
            for k in 0..10 {
                let s = BoundSet::new(b, k);
                assert!(s.l_max + 1 - 4 * s.d - b > s.ell_new);
            }
        }
    }
}
