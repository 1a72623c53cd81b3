//! Reference implementations used as ground truth: exhaustive search, the DP
//! recursion evaluated literally, enumeration of all small interval systems,
//! and definitional checks for matchings and chain covers.
//!
//! None of this reuses the fast solvers or the certifier.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::certify::RejectionKind;
use crate::cover::ChainCover;
use crate::graph::{CompactConvexGraph, Edge, Interval, WeightedConvexGraph};

/// Largest edge count accepted by the exhaustive searches.
pub const MAX_BRUTE_FORCE_EDGES: u64 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{m} edges exceed the brute-force limit of {MAX_BRUTE_FORCE_EDGES}")]
    TooLarge { m: u64 },
}

/// Explicit DP table: `rows[u - 1]` holds `W^u_L ..= W^u_R` for non-empty rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseDPTable {
    pub rows: Vec<Option<Vec<i64>>>,
}

impl DenseDPTable {
    pub fn entry_count(&self) -> usize {
        self.rows.iter().flatten().map(Vec::len).sum()
    }

    /// Largest entry, with the empty matching counted as 0.
    pub fn max_value(&self) -> i64 {
        self.rows.iter().flatten().flatten().copied().fold(0, i64::max)
    }
}

/// Independence straight from the definition: no edge of `g` joins an
/// endpoint of `e` to an endpoint of `f`, and the edges share no vertex.
pub fn independent_by_definition(g: &CompactConvexGraph, e: Edge, f: Edge) -> bool {
    e.u != f.u && e.v != f.v && !g.contains_edge(Edge::new(e.u, f.v)) && !g.contains_edge(Edge::new(f.u, e.v))
}

/// Quadratic all-pairs check that `edges` is an induced matching of `g`.
pub fn is_induced_matching(g: &CompactConvexGraph, edges: &[Edge]) -> bool {
    edges.iter().all(|&e| g.contains_edge(e))
        && edges.iter().enumerate().all(|(k, &e)| {
            edges[k + 1..].iter().all(|&f| independent_by_definition(g, e, f))
        })
}

/// Best `(total, edges)` over all induced matchings, the empty one included.
pub fn brute_force_weighted_matching(g: &WeightedConvexGraph) -> Result<(i64, Vec<Edge>), OracleError> {
    let graph = g.graph();
    let m = graph.edge_count();
    if m > MAX_BRUTE_FORCE_EDGES {
        return Err(OracleError::TooLarge { m });
    }
    let edges: Vec<(Edge, i64)> = graph
        .edges()
        .map(|e| (e, g.weight(e).expect("edge of graph")))
        .collect();
    let mut best = (0i64, Vec::new());
    let mut chosen = Vec::new();
    search(graph, &edges, 0, 0, &mut chosen, &mut best);
    Ok(best)
}

fn search(
    g: &CompactConvexGraph,
    edges: &[(Edge, i64)],
    next: usize,
    total: i64,
    chosen: &mut Vec<Edge>,
    best: &mut (i64, Vec<Edge>),
) {
    if total > best.0 {
        *best = (total, chosen.clone());
    }
    for k in next..edges.len() {
        let (e, w) = edges[k];
        if chosen.iter().all(|&f| independent_by_definition(g, e, f)) {
            chosen.push(e);
            search(g, edges, k + 1, total + w, chosen, best);
            chosen.pop();
        }
    }
}

pub fn brute_force_weighted(g: &WeightedConvexGraph) -> Result<i64, OracleError> {
    brute_force_weighted_matching(g).map(|(total, _)| total)
}

/// Maximum induced matching size by exhaustive search.
pub fn brute_force_cardinality(g: &CompactConvexGraph) -> Result<usize, OracleError> {
    let unit = WeightedConvexGraph::with_unit_weights(g.clone());
    brute_force_weighted(&unit).map(|t| t as usize)
}

/// Evaluates `W^i_j = C^i_j + max{W^{i'}_{j'} : R^{i'} < j, j' < L^i} ∪ {0}`
/// cell by cell, scanning every qualifying earlier entry. `O(m^2)` in the
/// worst case.
pub fn naive_dp(g: &WeightedConvexGraph) -> DenseDPTable {
    let graph = g.graph();
    let mut order: Vec<usize> = (1..=graph.n_u()).filter(|&u| graph.row(u).is_some()).collect();
    order.sort_by_key(|&u| graph.row(u).map(|iv| iv.left));
    let mut rows: Vec<Option<Vec<i64>>> = vec![None; graph.n_u()];
    for (k, &i) in order.iter().enumerate() {
        let iv = graph.row(i).expect("non-empty");
        let weights = g.row_weights(i);
        let mut values = Vec::with_capacity(iv.len());
        for j in iv.left..=iv.right {
            let mut best = 0i64;
            // Every qualifying entry lies left of L^i, so its row was filled earlier.
            for &p in &order[..k] {
                let piv = graph.row(p).expect("non-empty");
                if piv.right >= j {
                    continue;
                }
                let prev = rows[p - 1].as_ref().expect("filled earlier");
                // Entries of row p sit at columns piv.left.., so those left of L^i form a prefix.
                let before = (iv.left - piv.left).min(prev.len());
                best = prev[..before].iter().copied().fold(best, i64::max);
            }
            values.push(weights[j - iv.left] + best);
        }
        rows[i - 1] = Some(values);
    }
    DenseDPTable { rows }
}

/// Every interval system with exactly `n_u` rows over `1..=n_v`, each row
/// being empty or one of the `n_v (n_v + 1) / 2` intervals.
pub fn enumerate_all_graphs(n_u: usize, n_v: usize) -> impl Iterator<Item = CompactConvexGraph> {
    let mut choices: Vec<Option<Interval>> = vec![None];
    for l in 1..=n_v {
        for r in l..=n_v {
            choices.push(Some(Interval::new(l, r)));
        }
    }
    let base = choices.len();
    let total = (base as u128).pow(n_u as u32);
    (0..total).map(move |mut code| {
        let rows = (0..n_u)
            .map(|_| {
                let c = choices[(code % base as u128) as usize];
                code /= base as u128;
                c
            })
            .collect();
        CompactConvexGraph::new(n_v, rows).expect("enumerated intervals are valid")
    })
}

/// Maximum matching size by the sweep that recomputes each threshold from
/// scratch over all earlier rows. Quadratic.
pub fn sweep_recomputing_thresholds(g: &CompactConvexGraph) -> usize {
    let n_v = g.n_v();
    let mut best_final = vec![0usize; n_v + 1];
    let mut finished = 0;
    // (left, right, base, first column of base + 1 if present)
    let mut done: Vec<(usize, usize, usize, Option<usize>)> = Vec::new();
    let rows = rows_by_left(g);
    for left in 1..=n_v {
        for &(l, r) in rows.iter().filter(|&&(l, _)| l == left) {
            let w = finished + 1;
            let threshold = done
                .iter()
                .filter(|&&(pl, _, base, switch)| {
                    (base == w && pl < l) || (base + 1 == w && switch.is_some_and(|s| s < l))
                })
                .map(|&(_, pr, _, _)| pr)
                .min()
                .unwrap_or(n_v + 1);
            let (top, switch) = if threshold < r {
                (w + 1, Some(threshold + 1))
            } else {
                (w, None)
            };
            best_final[r] = best_final[r].max(top);
            done.push((l, r, w, switch));
        }
        finished = finished.max(best_final[left]);
    }
    finished
}

/// Maximum matching size by the sweep that lowers thresholds from every
/// entry of each finished column.
pub fn sweep_scanning_columns(g: &CompactConvexGraph) -> usize {
    let n_v = g.n_v();
    let n_u = g.n_u();
    let mut thresholds = vec![n_v + 1; n_u + 2];
    let mut best_final = vec![0usize; n_v + 1];
    let mut finished = 0;
    let mut done: Vec<(usize, usize, usize, Option<usize>)> = Vec::new();
    let rows = rows_by_left(g);
    for left in 1..=n_v {
        for &(l, r) in rows.iter().filter(|&&(l, _)| l == left) {
            let w = finished + 1;
            let (top, switch) = if thresholds[w] < r {
                (w + 1, Some(thresholds[w] + 1))
            } else {
                (w, None)
            };
            best_final[r] = best_final[r].max(top);
            done.push((l, r, w, switch));
        }
        finished = finished.max(best_final[left]);
        for &(l, r, base, switch) in &done {
            if l <= left && left <= r {
                let value = if switch.is_some_and(|s| s <= left) { base + 1 } else { base };
                thresholds[value] = thresholds[value].min(r);
            }
        }
    }
    finished
}

fn rows_by_left(g: &CompactConvexGraph) -> Vec<(usize, usize)> {
    let mut rows: Vec<(usize, usize)> = g.rows().iter().flatten().map(|iv| (iv.left, iv.right)).collect();
    rows.sort_by_key(|&(l, _)| l);
    rows
}

/// Chain-cover validity from the definitions: entries well-formed and inside
/// `g`, each row's columns within a chain contiguous, no two edges of one chain independent within that chain, and the
/// union of all chains equal to the edge set of `g`. Returns the failing
/// category, checked in the same precedence as the certifier.
pub fn chain_cover_defect(g: &CompactConvexGraph, cover: &ChainCover) -> Option<RejectionKind> {
    for (k, chain) in cover.chains.iter().enumerate() {
        for e in chain {
            if k + 1 > cover.w_star || e.b_hat == 0 || e.b_hat > e.end {
                return Some(RejectionKind::MalformedEntry);
            }
            let inside = g.row(e.row).is_some_and(|iv| iv.left <= e.b_hat && e.end <= iv.right);
            if !inside {
                return Some(RejectionKind::OutsideGraph);
            }
        }
    }
    for chain in &cover.chains {
        let mut columns: HashMap<usize, HashSet<usize>> = HashMap::new();
        for e in chain {
            columns.entry(e.row).or_default().extend(e.b_hat..=e.end);
        }
        let holed = columns.values().any(|cols| {
            let (lo, hi) = (cols.iter().min().unwrap(), cols.iter().max().unwrap());
            cols.len() != hi - lo + 1
        });
        if holed {
            return Some(RejectionKind::NonInterval);
        }
    }
    for chain in &cover.chains {
        let edges: HashSet<Edge> = chain
            .iter()
            .flat_map(|e| (e.b_hat..=e.end).map(move |v| Edge::new(e.row, v)))
            .collect();
        let list: Vec<Edge> = edges.iter().copied().collect();
        for (a_idx, &a) in list.iter().enumerate() {
            for &b in &list[a_idx + 1..] {
                let independent = a.u != b.u
                    && a.v != b.v
                    && !edges.contains(&Edge::new(a.u, b.v))
                    && !edges.contains(&Edge::new(b.u, a.v));
                if independent {
                    return Some(RejectionKind::NotNested);
                }
            }
        }
    }
    let covered: HashSet<Edge> = cover
        .chains
        .iter()
        .flatten()
        .flat_map(|e| (e.b_hat..=e.end).map(move |v| Edge::new(e.row, v)))
        .collect();
    if g.edges().any(|e| !covered.contains(&e)) {
        return Some(RejectionKind::CoverageGap);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weighted(n_v: usize, pairs: &[(usize, usize)], weights: Vec<Vec<i64>>) -> WeightedConvexGraph {
        WeightedConvexGraph::new(CompactConvexGraph::from_pairs(n_v, pairs).unwrap(), weights).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_weighted(&weighted(0, &[], vec![])), Ok(0));
        assert_eq!(brute_force_weighted(&weighted(1, &[(1, 1)], vec![vec![-2]])), Ok(0));
        assert_eq!(brute_force_weighted(&weighted(2, &[(1, 2)], vec![vec![5, 7]])), Ok(7));
        let big = CompactConvexGraph::from_pairs(25, &[(1, 25)]).unwrap();
        assert_eq!(brute_force_cardinality(&big), Err(OracleError::TooLarge { m: 25 }));
    }

    #[test]
    fn naive_dp_examples() {
        let t = naive_dp(&weighted(1, &[(1, 1)], vec![vec![4]]));
        assert_eq!(t.rows, vec![Some(vec![4])]);
        let t = naive_dp(&weighted(2, &[(1, 1), (2, 2)], vec![vec![1], vec![1]]));
        assert_eq!(t.rows, vec![Some(vec![1]), Some(vec![2])]);
        assert_eq!(t.entry_count(), 2);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_all_graphs(1, 1).count(), 2);
        assert_eq!(enumerate_all_graphs(1, 2).count(), 4);
        assert_eq!(enumerate_all_graphs(2, 2).count(), 16);
        assert_eq!(enumerate_all_graphs(0, 3).count(), 1);
        let all: HashSet<Vec<Option<Interval>>> =
            enumerate_all_graphs(2, 3).map(|g| g.rows().to_vec()).collect();
        assert_eq!(all.len(), 49);
    }

    #[test]
    fn definitional_independence() {
        let g = CompactConvexGraph::from_pairs(3, &[(1, 1), (3, 3), (1, 3)]).unwrap();
        assert!(independent_by_definition(&g, Edge::new(1, 1), Edge::new(2, 3)));
        assert!(!independent_by_definition(&g, Edge::new(1, 1), Edge::new(3, 3)));
        assert!(is_induced_matching(&g, &[Edge::new(1, 1), Edge::new(2, 3)]));
        assert!(!is_induced_matching(&g, &[Edge::new(1, 2)]));
    }
}
