//! Maximum-weight induced matching in `O(n + m)`.
//!
//! Rows are processed in nondecreasing order of their left endpoint. For every
//! right endpoint `r` we keep an array `P_r[S_r..=r]` where `S_r` is the
//! smallest left endpoint among rows ending at `r`; `P_r[j]` holds the best
//! value of an already processed edge `(i', j')` with `R^{i'} = r` and
//! `j' <= j`. The running maximum `M` of a row is advanced one column at a
//! time by consulting a single cell of one of these arrays, so the table of
//! DP values is never materialized.
//!
//! Every stored maximum also carries a witness: an index into an arena of
//! DP nodes, each recording the edge and the node its value was built on.
//! Following the links from the final witness yields the matching.

use crate::graph::{CompactConvexGraph, Edge, InducedMatching, WeightedConvexGraph};
use crate::sort::stable_bucket_order;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    pub total: i64,
    pub edges: InducedMatching,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WeightedOptions {
    /// Return the single heaviest edge instead of the empty matching when
    /// no edge has positive weight.
    pub require_nonempty: bool,
}

/// `S_r` for `r` in `1..=n_v`: the smallest `L^i` over rows with `R^i = r`,
/// or `r` itself if no row ends there. Index 0 is unused.
pub fn earliest_starts(g: &CompactConvexGraph) -> Vec<usize> {
    let mut starts: Vec<usize> = (0..=g.n_v()).collect();
    for iv in g.rows().iter().flatten() {
        starts[iv.right] = starts[iv.right].min(iv.left);
    }
    starts
}

pub fn max_weight_induced_matching(g: &WeightedConvexGraph) -> MatchingResult {
    max_weight_induced_matching_with(g, WeightedOptions::default())
}

pub fn max_weight_induced_matching_with(
    g: &WeightedConvexGraph,
    options: WeightedOptions,
) -> MatchingResult {
    let mut result = solve(g, &mut NoAudit);
    if options.require_nonempty && result.edges.is_empty() {
        let heaviest = g
            .graph()
            .edges()
            .map(|e| (g.weight(e).expect("edge of graph"), e))
            .fold(None, |best: Option<(i64, Edge)>, cand| match best {
                Some(b) if b.0 >= cand.0 => Some(b),
                _ => Some(cand),
            });
        if let Some((w, e)) = heaviest {
            result = MatchingResult {
                total: w,
                edges: vec![e],
            };
        }
    }
    result
}

/// A column where the incrementally maintained row maximum disagreed with the
/// maximum taken directly over its defining set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncrementMismatch {
    pub row: usize,
    pub column: usize,
    pub incremental: i64,
    pub direct: i64,
}

/// Runs the solver while recomputing, at every table entry, the row maximum
/// `max{W^{i'}_{j'} : R^{i'} < j, j' < L^i} ∪ {0}` by scanning all rows
/// processed so far. Quadratic; meant for small instances.
pub fn audit_incremental_maxima(g: &WeightedConvexGraph) -> (MatchingResult, Vec<IncrementMismatch>) {
    let mut audit = DirectMaxAudit {
        graph: g.graph(),
        processed: Vec::new(),
        current: Vec::new(),
        mismatches: Vec::new(),
    };
    let result = solve(g, &mut audit);
    (result, audit.mismatches)
}

trait Observer {
    fn begin_row(&mut self, _row: usize) {}
    fn entry(&mut self, _row: usize, _column: usize, _running_max: i64, _value: i64) {}
    fn end_row(&mut self, _row: usize) {}
}

struct NoAudit;

impl Observer for NoAudit {}

struct DirectMaxAudit<'a> {
    graph: &'a CompactConvexGraph,
    processed: Vec<(usize, Vec<i64>)>,
    current: Vec<i64>,
    mismatches: Vec<IncrementMismatch>,
}

impl Observer for DirectMaxAudit<'_> {
    fn begin_row(&mut self, _row: usize) {
        self.current.clear();
    }

    fn entry(&mut self, row: usize, column: usize, running_max: i64, value: i64) {
        let left = self.graph.row(row).expect("processed rows are non-empty").left;
        let mut direct = 0;
        for (other, values) in &self.processed {
            let iv = self.graph.row(*other).expect("non-empty");
            if iv.right >= column {
                continue;
            }
            for (offset, &w) in values.iter().enumerate() {
                if iv.left + offset < left {
                    direct = direct.max(w);
                }
            }
        }
        if direct != running_max {
            self.mismatches.push(IncrementMismatch {
                row,
                column,
                incremental: running_max,
                direct,
            });
        }
        self.current.push(value);
    }

    fn end_row(&mut self, row: usize) {
        self.processed.push((row, std::mem::take(&mut self.current)));
    }
}

struct Node {
    u: u32,
    v: u32,
    pred: u32,
}

/// A non-empty row with the position of its first weight in the flat weight
/// array, so processing a row touches one place in memory.
#[derive(Clone, Copy)]
struct RowRef {
    left: u32,
    right: u32,
    row: u32,
    weights_at: usize,
}

fn rows_by_left(g: &WeightedConvexGraph) -> Vec<RowRef> {
    let mut weights_at = 0;
    let mut present = Vec::with_capacity(g.graph().n_u());
    for (k, iv) in g.graph().rows().iter().enumerate() {
        if let Some(iv) = iv {
            present.push(RowRef {
                left: iv.left as u32,
                right: iv.right as u32,
                row: k as u32 + 1,
                weights_at,
            });
            weights_at += iv.len();
        }
    }
    stable_bucket_order(&present, g.graph().n_v(), |r| r.left as usize)
}

fn solve<O: Observer>(g: &WeightedConvexGraph, observer: &mut O) -> MatchingResult {
    let graph = g.graph();
    let n_v = graph.n_v();
    let starts = earliest_starts(graph);

    // P_r occupies cells [offset[r], offset[r] + r - S_r].
    let mut offset = vec![0usize; n_v + 2];
    for r in 1..=n_v {
        offset[r + 1] = offset[r] + (r - starts[r] + 1);
    }
    let cells = offset[n_v + 1];
    let mut best = vec![0i64; cells];
    let mut best_witness = vec![NONE; cells];
    let cell = |r: usize, j: usize| offset[r] + (j - starts[r]);

    let mut nodes: Vec<Node> = Vec::new();
    let order = rows_by_left(g);
    let all_weights = g.flat_weights();
    let mut next_row = 0;

    let mut finished = 0i64;
    let mut finished_witness = NONE;

    for left in 1..=n_v {
        while let Some(&r) = order.get(next_row) {
            if r.left as usize != left {
                break;
            }
            next_row += 1;
            let (row, right) = (r.row as usize, r.right as usize);
            observer.begin_row(row);
            let weights = &all_weights[r.weights_at..r.weights_at + (right + 1 - left)];
            let mut running = finished;
            let mut running_witness = finished_witness;
            let mut row_max = 0i64;
            let mut row_max_witness = NONE;

            for j in left..=right {
                if j > left && starts[j - 1] < left {
                    let c = cell(j - 1, left - 1);
                    if best[c] > running {
                        running = best[c];
                        running_witness = best_witness[c];
                    }
                }
                let value = weights[j - left] + running;
                observer.entry(row, j, running, value);
                if value > row_max {
                    row_max = value;
                    row_max_witness = nodes.len() as u32;
                    nodes.push(Node {
                        u: row as u32,
                        v: j as u32,
                        pred: running_witness,
                    });
                }
                let c = cell(right, j);
                if row_max > best[c] {
                    best[c] = row_max;
                    best_witness[c] = row_max_witness;
                }
            }
            observer.end_row(row);
        }
        let c = cell(left, left);
        if best[c] > finished {
            finished = best[c];
            finished_witness = best_witness[c];
        }
    }

    let mut edges = Vec::new();
    let mut at = finished_witness;
    while at != NONE {
        let node = &nodes[at as usize];
        edges.push(Edge::new(node.u as usize, node.v as usize));
        at = node.pred;
    }
    edges.reverse();
    MatchingResult {
        total: finished,
        edges,
    }
}
