#![allow(dead_code)]

use convex_matching::{CompactConvexGraph, Interval, WeightedConvexGraph};
use proptest::prelude::*;

/// Graphs with `n_u <= max_u` rows over `1..=n_v`, `n_v <= max_v`; about one
/// row in five is empty.
pub fn graphs(max_u: usize, max_v: usize) -> impl Strategy<Value = CompactConvexGraph> {
    (1..=max_v, 0..=max_u).prop_flat_map(|(n_v, n_u)| {
        let row = prop_oneof![
            1 => Just(None),
            4 => (1..=n_v, 1..=n_v).prop_map(|(a, b)| Some(Interval::new(a.min(b), a.max(b)))),
        ];
        proptest::collection::vec(row, n_u)
            .prop_map(move |rows| CompactConvexGraph::new(n_v, rows).unwrap())
    })
}

/// Weighted graphs with weights drawn from `lo..=hi`.
pub fn weighted_graphs(max_u: usize, max_v: usize, lo: i64, hi: i64) -> impl Strategy<Value = WeightedConvexGraph> {
    let cells = max_u * max_v;
    (graphs(max_u, max_v), proptest::collection::vec(lo..=hi, cells)).prop_map(|(g, pool)| {
        let mut k = 0;
        WeightedConvexGraph::from_fn(g, |_| {
            k += 1;
            pool[k - 1]
        })
    })
}

/// The instance drawn in the worked example: five rows over six columns,
/// where row 3 sees every column but the first and every neighbour of row 2
/// is also a neighbour of row 1.
pub fn worked_example_graph() -> CompactConvexGraph {
    CompactConvexGraph::from_pairs(6, &[(1, 3), (2, 3), (2, 6), (4, 5), (5, 6)]).unwrap()
}
