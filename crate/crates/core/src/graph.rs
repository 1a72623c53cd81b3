//! Convex bipartite graphs in compact form.
//!
//! `V` is numbered `1..=n_v` so that the neighbourhood of every `U`-vertex is
//! an interval `[L, R]`. A graph is stored as one optional interval per
//! `U`-vertex, which takes `O(n)` space regardless of the number of edges.
//! All public indices are 1-based.

use thiserror::Error;

use crate::sort::stable_bucket_order;

/// Closed interval `[left, right]` of `V`-indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub left: usize,
    pub right: usize,
}

impl Interval {
    pub fn new(left: usize, right: usize) -> Self {
        debug_assert!(left <= right);
        Interval { left, right }
    }

    // Never empty, so there is no `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.right - self.left + 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.left <= v && v <= self.right
    }
}

/// An edge `(u, v)` with `u` in `U` and `v` in `V`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        Edge { u, v }
    }
}

/// A set of pairwise independent edges.
pub type InducedMatching = Vec<Edge>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("row {u}: interval [{left}, {right}] is not inside 1..={n_v}")]
    InvalidInterval {
        u: usize,
        left: usize,
        right: usize,
        n_v: usize,
    },
    #[error("row {u}: neighbours are not consecutive, V-index {gap_position} is missing")]
    NotConvex { u: usize, gap_position: usize },
    #[error("row {u}: neighbour {v} is outside 1..={n_v}")]
    NeighborOutOfRange { u: usize, v: usize, n_v: usize },
    #[error("row {u}: neighbour list is not strictly increasing")]
    UnsortedNeighbors { u: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {u}: expected {expected} weights, found {found}")]
    WeightCount {
        u: usize,
        expected: usize,
        found: usize,
    },
}

/// Compact representation: one interval (or nothing) per `U`-vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactConvexGraph {
    n_v: usize,
    rows: Vec<Option<Interval>>,
    edge_count: u64,
}

impl CompactConvexGraph {
    /// Builds a graph from per-row intervals; `n_u` is `rows.len()`.
    pub fn new(n_v: usize, rows: Vec<Option<Interval>>) -> Result<Self, GraphError> {
        let mut edge_count: u64 = 0;
        for (idx, row) in rows.iter().enumerate() {
            if let Some(iv) = row {
                if iv.left < 1 || iv.left > iv.right || iv.right > n_v {
                    return Err(GraphError::InvalidInterval {
                        u: idx + 1,
                        left: iv.left,
                        right: iv.right,
                        n_v,
                    });
                }
                edge_count += iv.len() as u64;
            }
        }
        Ok(CompactConvexGraph {
            n_v,
            rows,
            edge_count,
        })
    }

    /// Builds a graph from `(L, R)` pairs, where `(0, 0)` marks an empty row.
    pub fn from_pairs(n_v: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let rows = pairs
            .iter()
            .map(|&(l, r)| {
                if l == 0 && r == 0 {
                    None
                } else {
                    Some(Interval { left: l, right: r })
                }
            })
            .collect();
        Self::new(n_v, rows)
    }

    /// Compresses explicit neighbour lists. Fails with `NotConvex` if some
    /// list is not a run of consecutive `V`-indices.
    pub fn from_adjacency(
        n_u: usize,
        n_v: usize,
        adjacency: &[Vec<usize>],
    ) -> Result<Self, GraphError> {
        if adjacency.len() != n_u {
            return Err(GraphError::RowCount {
                expected: n_u,
                found: adjacency.len(),
            });
        }
        let mut rows = Vec::with_capacity(n_u);
        for (idx, list) in adjacency.iter().enumerate() {
            let u = idx + 1;
            let (Some(&first), Some(&last)) = (list.first(), list.last()) else {
                rows.push(None);
                continue;
            };
            for &v in list {
                if v < 1 || v > n_v {
                    return Err(GraphError::NeighborOutOfRange { u, v, n_v });
                }
            }
            for pair in list.windows(2) {
                if pair[1] <= pair[0] {
                    return Err(GraphError::UnsortedNeighbors { u });
                }
                if pair[1] != pair[0] + 1 {
                    return Err(GraphError::NotConvex {
                        u,
                        gap_position: pair[0] + 1,
                    });
                }
            }
            rows.push(Some(Interval::new(first, last)));
        }
        Self::new(n_v, rows)
    }

    pub fn n_u(&self) -> usize {
        self.rows.len()
    }

    pub fn n_v(&self) -> usize {
        self.n_v
    }

    /// Total vertex count `n = n_u + n_v`.
    pub fn n(&self) -> usize {
        self.n_u() + self.n_v
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn rows(&self) -> &[Option<Interval>] {
        &self.rows
    }

    /// Interval of the 1-based row `u`, `None` if the row is empty or out of range.
    pub fn row(&self, u: usize) -> Option<Interval> {
        if u == 0 {
            return None;
        }
        self.rows.get(u - 1).copied().flatten()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.row(e.u).is_some_and(|iv| iv.contains(e.v))
    }

    /// Iterates all edges, row by row, in increasing `v` within a row.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.rows.iter().enumerate().flat_map(|(idx, row)| {
            row.iter()
                .flat_map(move |iv| (iv.left..=iv.right).map(move |v| Edge::new(idx + 1, v)))
        })
    }

    /// Expands to explicit sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|row| match row {
                Some(iv) => (iv.left..=iv.right).collect(),
                None => Vec::new(),
            })
            .collect()
    }

    /// Two edges are independent iff neither endpoint in `V` lies in the
    /// other edge's row interval.
    pub fn edges_independent(&self, e: Edge, f: Edge) -> bool {
        debug_assert!(self.contains_edge(e) && self.contains_edge(f));
        let (Some(ie), Some(if_)) = (self.row(e.u), self.row(f.u)) else {
            return false;
        };
        !ie.contains(f.v) && !if_.contains(e.v)
    }

    /// Non-empty rows in nondecreasing order of `L`, ties by row index.
    /// Counting sort, `O(n)`.
    pub fn rows_sorted_by_left(&self) -> Vec<usize> {
        let present: Vec<usize> = (1..=self.n_u())
            .filter(|&u| self.rows[u - 1].is_some())
            .collect();
        stable_bucket_order(&present, self.n_v, |&u| {
            self.rows[u - 1].map_or(0, |iv| iv.left)
        })
    }
}

/// A compact graph with one integer weight per edge, stored row-contiguously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedConvexGraph {
    graph: CompactConvexGraph,
    offsets: Vec<usize>,
    weights: Vec<i64>,
}

impl WeightedConvexGraph {
    /// `row_weights[u - 1][j - L]` is the weight of edge `(u, j)`.
    pub fn new(graph: CompactConvexGraph, row_weights: Vec<Vec<i64>>) -> Result<Self, GraphError> {
        if row_weights.len() != graph.n_u() {
            return Err(GraphError::RowCount {
                expected: graph.n_u(),
                found: row_weights.len(),
            });
        }
        let mut offsets = Vec::with_capacity(graph.n_u() + 1);
        let mut weights = Vec::with_capacity(graph.edge_count() as usize);
        offsets.push(0);
        for (idx, (row, ws)) in graph.rows().iter().zip(row_weights).enumerate() {
            let expected = row.map_or(0, |iv| iv.len());
            if ws.len() != expected {
                return Err(GraphError::WeightCount {
                    u: idx + 1,
                    expected,
                    found: ws.len(),
                });
            }
            weights.extend(ws);
            offsets.push(weights.len());
        }
        Ok(WeightedConvexGraph {
            graph,
            offsets,
            weights,
        })
    }

    /// Assigns every edge the weight returned by `weight`, visiting edges in
    /// row order.
    pub fn from_fn(graph: CompactConvexGraph, mut weight: impl FnMut(Edge) -> i64) -> Self {
        let mut offsets = Vec::with_capacity(graph.n_u() + 1);
        let mut weights = Vec::with_capacity(graph.edge_count() as usize);
        offsets.push(0);
        for e in graph.edges() {
            while offsets.len() < e.u {
                offsets.push(weights.len());
            }
            weights.push(weight(e));
        }
        while offsets.len() <= graph.n_u() {
            offsets.push(weights.len());
        }
        WeightedConvexGraph {
            graph,
            offsets,
            weights,
        }
    }

    pub fn with_unit_weights(graph: CompactConvexGraph) -> Self {
        Self::from_fn(graph, |_| 1)
    }

    pub fn graph(&self) -> &CompactConvexGraph {
        &self.graph
    }

    /// Weights of row `u` (1-based), indexed by `j - L`.
    pub fn row_weights(&self, u: usize) -> &[i64] {
        &self.weights[self.offsets[u - 1]..self.offsets[u]]
    }

    /// All weights, row after row.
    pub(crate) fn flat_weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, e: Edge) -> Option<i64> {
        let iv = self.graph.row(e.u)?;
        iv.contains(e.v)
            .then(|| self.row_weights(e.u)[e.v - iv.left])
    }

    pub fn into_parts(self) -> (CompactConvexGraph, Vec<Vec<i64>>) {
        let per_row = (1..=self.graph.n_u())
            .map(|u| self.row_weights(u).to_vec())
            .collect();
        (self.graph, per_row)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n_v: usize, pairs: &[(usize, usize)]) -> CompactConvexGraph {
        CompactConvexGraph::from_pairs(n_v, pairs).unwrap()
    }

    #[test]
    fn from_adjacency_accepts_runs() {
        let graph = CompactConvexGraph::from_adjacency(2, 3, &[vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(graph, g(3, &[(1, 2), (2, 3)]));
        assert_eq!(graph.edge_count(), 4);
    }

    #[test]
    fn from_adjacency_rejects_gap() {
        let err = CompactConvexGraph::from_adjacency(1, 3, &[vec![1, 3]]).unwrap_err();
        assert_eq!(err, GraphError::NotConvex { u: 1, gap_position: 2 });
    }

    #[test]
    fn from_adjacency_empty_rows_and_errors() {
        let graph = CompactConvexGraph::from_adjacency(2, 2, &[vec![], vec![2]]).unwrap();
        assert_eq!(graph.rows(), &[None, Some(Interval::new(2, 2))]);
        assert!(matches!(
            CompactConvexGraph::from_adjacency(1, 2, &[vec![3]]),
            Err(GraphError::NeighborOutOfRange { u: 1, v: 3, .. })
        ));
        assert!(matches!(
            CompactConvexGraph::from_adjacency(1, 3, &[vec![2, 1]]),
            Err(GraphError::UnsortedNeighbors { u: 1 })
        ));
        assert!(matches!(
            CompactConvexGraph::from_adjacency(2, 3, &[vec![1]]),
            Err(GraphError::RowCount { .. })
        ));
    }

    #[test]
    fn new_rejects_bad_intervals() {
        assert!(CompactConvexGraph::from_pairs(3, &[(2, 1)]).is_err());
        assert!(CompactConvexGraph::from_pairs(3, &[(1, 4)]).is_err());
        assert!(CompactConvexGraph::from_pairs(3, &[(0, 2)]).is_err());
    }

    #[test]
    fn independence_examples() {
        let graph = g(3, &[(1, 1), (3, 3)]);
        assert!(graph.edges_independent(Edge::new(1, 1), Edge::new(2, 3)));
        let graph = g(3, &[(1, 3), (2, 2)]);
        assert!(!graph.edges_independent(Edge::new(1, 1), Edge::new(2, 2)));
    }

    #[test]
    fn sorted_by_left() {
        assert_eq!(g(4, &[(3, 4), (1, 2)]).rows_sorted_by_left(), vec![2, 1]);
        assert_eq!(g(3, &[(1, 2), (1, 3)]).rows_sorted_by_left(), vec![1, 2]);
        assert_eq!(g(3, &[(0, 0), (2, 3), (1, 1)]).rows_sorted_by_left(), vec![3, 2]);
    }

    #[test]
    fn weighted_layout() {
        let graph = g(3, &[(1, 2), (0, 0), (2, 3)]);
        let w = WeightedConvexGraph::new(graph.clone(), vec![vec![1, 2], vec![], vec![3, 4]]).unwrap();
        assert_eq!(w.row_weights(3), &[3, 4]);
        assert_eq!(w.weight(Edge::new(3, 3)), Some(4));
        assert_eq!(w.weight(Edge::new(2, 1)), None);
        let f = WeightedConvexGraph::from_fn(graph.clone(), |e| (e.u * 10 + e.v) as i64);
        assert_eq!(f.row_weights(1), &[11, 12]);
        assert_eq!(f.row_weights(2), &[] as &[i64]);
        assert_eq!(f.row_weights(3), &[32, 33]);
        assert!(matches!(
            WeightedConvexGraph::new(graph, vec![vec![1], vec![], vec![3, 4]]),
            Err(GraphError::WeightCount { u: 1, expected: 2, found: 1 })
        ));
    }
}
