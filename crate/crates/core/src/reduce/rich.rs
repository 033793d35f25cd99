use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::order::{affected_vertices, maximal_nonterminal_intervals, Interval, VertexOrder};
use crate::reduce::BoundSet;
use crate::regular::is_regular;

/// Rich / in-rich / out-rich split of one maximal non-terminal interval.
/// Vertex lists are in rank order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RichPartition {
    pub interval: Interval,
    /// At least `d` out- and `d` in-neighbours inside the interval.
    pub rich: Vec<usize>,
    /// At most `d - 1` out-neighbours inside the interval.
    pub in_rich: Vec<usize>,
    /// At most `d - 1` in-neighbours inside the interval (and not in-rich).
    pub out_rich: Vec<usize>,
    pub affected_rich: Vec<usize>,
}

/// Classify one interval at threshold `d`. A vertex short on both sides
/// (only possible when the interval has fewer than `2d` vertices) counts as
/// in-rich.
pub(crate) fn partition_interval(
    inst: &Instance,
    order: &VertexOrder,
    interval: Interval,
    d: usize,
    affected: &[bool],
) -> RichPartition {
    let t = inst.tournament();
    let members = interval.vertices(order);
    let mut part = RichPartition {
        interval,
        rich: Vec::new(),
        in_rich: Vec::new(),
        out_rich: Vec::new(),
        affected_rich: Vec::new(),
    };
    for &v in members {
        let out = members.iter().filter(|&&u| t.beats(v, u)).count();
        let inn = members.len() - 1 - out;
        if out < d {
            part.in_rich.push(v);
        } else if inn < d {
            part.out_rich.push(v);
        } else {
            part.rich.push(v);
            if affected[v] {
                part.affected_rich.push(v);
            }
        }
    }
    part
}

/// The rich partition of every maximal non-terminal interval of a regular
/// order, at the threshold `bounds.d`.
pub fn classify_rich(
    inst: &Instance,
    order: &VertexOrder,
    bounds: &BoundSet,
) -> Result<Vec<RichPartition>> {
    if !is_regular(inst, order) {
        return Err(Error::OrderNotRegular);
    }
    let affected = affected_vertices(inst, order);
    Ok(maximal_nonterminal_intervals(inst, order)
        .into_iter()
        .map(|iv| partition_interval(inst, order, iv, bounds.d, &affected))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::Tournament;

    #[test]
    fn transitive_run_middle_is_rich() {
        // d = 1 + 2k + b with b = 0, k = 1 -> d = 3; run of 4d + 1 = 13
        let bounds = BoundSet::new(0, 1);
        let n = 4 * bounds.d + 1;
        let inst = Instance::new(Tournament::transitive(n), [], 1).unwrap();
        let parts = classify_rich(&inst, &VertexOrder::identity(n), &bounds).unwrap();
        assert_eq!(parts.len(), 1);
        let p = &parts[0];
        assert!(p.rich.contains(&(n / 2)));
        // first d have < d in-neighbours, last d have < d out-neighbours
        assert_eq!(p.out_rich, (0..3).collect::<Vec<_>>());
        assert_eq!(p.in_rich, (10..13).collect::<Vec<_>>());
        assert_eq!(p.rich.len() + p.in_rich.len() + p.out_rich.len(), n);
        assert!(p.affected_rich.is_empty());
    }

    #[test]
    fn short_interval_still_partitions() {
        let bounds = BoundSet::new(2, 2);
        let inst = Instance::new(Tournament::transitive(5), [], 2).unwrap();
        let parts = classify_rich(&inst, &VertexOrder::identity(5), &bounds).unwrap();
        assert!(parts[0].rich.is_empty());
        assert_eq!(parts[0].in_rich.len(), 5);
    }

    #[test]
    fn rejects_irregular_order() {
        let inst = Instance::new(Tournament::transitive(3), [], 0).unwrap();
        let rev = VertexOrder::new(vec![2, 1, 0]).unwrap();
        assert_eq!(
            classify_rich(&inst, &rev, &BoundSet::new(0, 0)),
            Err(Error::OrderNotRegular)
        );
    }
}
