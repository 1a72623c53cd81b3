//! Maximum-cardinality induced matching in `O(n_u + n_v)` from the compact
//! representation.
//!
//! With unit weights every row of the DP table is nondecreasing and holds at
//! most two consecutive values, so a row is fully described by its leftmost
//! value `w` and the column where it switches to `w + 1`. The switch column
//! is one past the threshold `t_w`: the smallest right endpoint among rows
//! that already show value `w` left of the current column. Thresholds are
//! kept per value and updated through deferred per-column lists, which makes
//! the whole sweep linear.

use thiserror::Error;

use crate::graph::{CompactConvexGraph, Edge, InducedMatching};
use crate::oracle::DenseDPTable;
use crate::sort::stable_bucket_order;

/// Columns `begin..=end` of a row that carry one DP value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub begin: usize,
    pub end: usize,
}

/// Compressed DP values of one row: `base` on `first`, and `base + 1` on
/// `second` when present. Stored as 32-bit column indices so the colorings
/// of a large sweep stay compact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowColoring {
    row: u32,
    base: u32,
    begin: u32,
    /// First column of value `base + 1`, or `end + 1` if there is none.
    switch: u32,
    end: u32,
}

impl RowColoring {
    /// Row carrying `base` on all of `span`.
    pub fn single(row: usize, base: usize, span: Span) -> Self {
        Self::split(row, base, span, span.end + 1)
    }

    /// Row carrying `base` on `span.begin..switch` and `base + 1` on
    /// `switch..=span.end`.
    ///
    /// # Panics
    /// If `switch` is outside `span.begin + 1..=span.end + 1`.
    pub fn split(row: usize, base: usize, span: Span, switch: usize) -> Self {
        assert!(span.begin < switch && switch <= span.end + 1, "switch column outside the row");
        RowColoring {
            row: row as u32,
            base: base as u32,
            begin: span.begin as u32,
            switch: switch as u32,
            end: span.end as u32,
        }
    }

    pub fn row(&self) -> usize {
        self.row as usize
    }

    pub fn base(&self) -> usize {
        self.base as usize
    }

    pub fn first(&self) -> Span {
        Span {
            begin: self.begin as usize,
            end: self.switch as usize - 1,
        }
    }

    pub fn second(&self) -> Option<Span> {
        (self.switch <= self.end).then_some(Span {
            begin: self.switch as usize,
            end: self.end as usize,
        })
    }

    pub fn max_value(&self) -> usize {
        self.base() + usize::from(self.switch <= self.end)
    }

    /// `(value, span)` pairs in column order.
    pub fn spans(&self) -> impl Iterator<Item = (usize, Span)> + '_ {
        std::iter::once((self.base(), self.first())).chain(self.second().map(|s| (self.base() + 1, s)))
    }

    pub fn value_at(&self, column: usize) -> Option<usize> {
        self.spans()
            .find(|(_, s)| s.begin <= column && column <= s.end)
            .map(|(w, _)| w)
    }

    /// Span carrying `value`, if the row has it.
    pub fn span_of(&self, value: usize) -> Option<Span> {
        self.spans().find(|&(w, _)| w == value).map(|(_, s)| s)
    }

    /// Spans cover exactly `[L, R]` of the row and values start at 1.
    pub fn is_well_formed(&self, g: &CompactConvexGraph) -> bool {
        g.row(self.row()).is_some_and(|iv| {
            self.base > 0 && self.begin as usize == iv.left && self.end as usize == iv.right
        })
    }
}

/// Points at the first or second span of a coloring: `2k + upper` for the
/// coloring at index `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Witness(u32);

impl Witness {
    const NONE: Witness = Witness(u32::MAX);

    fn new(index: usize, upper: bool) -> Self {
        Witness(((index as u32) << 1) | upper as u32)
    }

    fn get(self) -> Option<(usize, bool)> {
        (self != Self::NONE).then_some(((self.0 >> 1) as usize, self.0 & 1 == 1))
    }
}

/// Complete state of a finished sweep.
#[derive(Debug, Clone)]
pub struct SweepState {
    /// `t_w` with its witness, indexed by `w`.
    thresholds: Vec<(u32, Witness)>,
    /// `Q_r`, indexed by `r`.
    best_final: Vec<u32>,
    /// `F`: maximum over all finished columns, the optimum once the sweep ends.
    pub finished_max: usize,
    /// One coloring per non-empty row, in processing order.
    pub colorings: Vec<RowColoring>,
    finished_witness: Witness,
    /// Per coloring: witness for value `base - 1` left of its start, and
    /// for value `base` left of its second span.
    base_pred: Vec<Witness>,
    upper_pred: Vec<Witness>,
}

impl SweepState {
    /// Final threshold `t_w` for `w >= 1`; `n_v + 1` means no row showed `w`.
    pub fn threshold(&self, w: usize) -> Option<usize> {
        self.thresholds.get(w).filter(|_| w > 0).map(|&(t, _)| t as usize)
    }

    /// `Q_r`: best DP value at the last column of rows ending at `r`.
    pub fn best_final(&self, r: usize) -> Option<usize> {
        self.best_final.get(r).filter(|_| r > 0).map(|&q| q as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityResult {
    pub size: usize,
    pub matching: InducedMatching,
    pub colorings: Vec<RowColoring>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructionFailure {
    #[error("witness chain has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("witness for value {expected} points at row {row} which does not carry it")]
    BrokenLink { expected: usize, row: usize },
}

pub fn max_cardinality_induced_matching(g: &CompactConvexGraph) -> CardinalityResult {
    let state = sweep(g);
    let matching = matching_from_witnesses(&state, state.finished_max)
        .expect("witness chain of a completed sweep is consistent");
    CardinalityResult {
        size: state.finished_max,
        matching,
        colorings: state.colorings,
    }
}

/// Runs the threshold sweep and returns its final state.
pub fn sweep(g: &CompactConvexGraph) -> SweepState {
    sweep_observed(g, &mut NoAudit)
}

/// Walks the witness links of a completed sweep back from the optimum. Each
/// row on the chain contributes the edge at the first column of the span
/// that carries the chain's current value.
pub fn matching_from_witnesses(
    state: &SweepState,
    size: usize,
) -> Result<InducedMatching, ReconstructionFailure> {
    let mut edges = Vec::with_capacity(size);
    let mut at = state.finished_witness;
    let mut expected = size;
    while let Some((index, upper)) = at.get() {
        if expected == 0 {
            return Err(ReconstructionFailure::WrongLength {
                expected: size,
                found: edges.len() + 1,
            });
        }
        let coloring = state
            .colorings
            .get(index)
            .ok_or(ReconstructionFailure::BrokenLink { expected, row: 0 })?;
        let (value, span) = if upper {
            (coloring.base() + 1, coloring.second())
        } else {
            (coloring.base(), Some(coloring.first()))
        };
        let span = span.filter(|_| value == expected).ok_or(ReconstructionFailure::BrokenLink {
            expected,
            row: coloring.row(),
        })?;
        edges.push(Edge::new(coloring.row(), span.begin));
        at = if upper {
            state.upper_pred[index]
        } else {
            state.base_pred[index]
        };
        expected -= 1;
    }
    if expected != 0 {
        return Err(ReconstructionFailure::WrongLength {
            expected: size,
            found: edges.len(),
        });
    }
    edges.reverse();
    Ok(edges)
}

/// Expands colorings to the dense DP table they encode.
pub fn dense_table(g: &CompactConvexGraph, colorings: &[RowColoring]) -> DenseDPTable {
    let mut rows: Vec<Option<Vec<i64>>> = vec![None; g.n_u()];
    for c in colorings {
        let mut values = Vec::new();
        for (w, span) in c.spans() {
            values.extend(std::iter::repeat_n(w as i64, span.end + 1 - span.begin));
        }
        rows[c.row() - 1] = Some(values);
    }
    DenseDPTable { rows }
}

/// Threshold in use when a row was processed, alongside the value obtained
/// by scanning all earlier colorings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdMismatch {
    pub row: usize,
    pub value: usize,
    pub maintained: usize,
    pub recomputed: usize,
}

/// Runs the sweep and, for every processed row, recomputes `t_w` from
/// scratch as the smallest `R^{i'}` over rows `i'` with value `w` at some
/// column left of `L^i`. Quadratic; for small instances.
pub fn audit_thresholds(g: &CompactConvexGraph) -> (SweepState, Vec<ThresholdMismatch>) {
    let mut audit = ThresholdAudit {
        graph: g,
        mismatches: Vec::new(),
    };
    let state = sweep_observed(g, &mut audit);
    (state, audit.mismatches)
}

trait Observer {
    fn row_start(&mut self, _row: usize, _value: usize, _threshold: usize, _earlier: &[RowColoring]) {}
}

struct NoAudit;

impl Observer for NoAudit {}

struct ThresholdAudit<'a> {
    graph: &'a CompactConvexGraph,
    mismatches: Vec<ThresholdMismatch>,
}

impl Observer for ThresholdAudit<'_> {
    fn row_start(&mut self, row: usize, value: usize, threshold: usize, earlier: &[RowColoring]) {
        let left = self.graph.row(row).expect("non-empty").left;
        let recomputed = earlier
            .iter()
            .filter(|c| c.span_of(value).is_some_and(|s| s.begin < left))
            .map(|c| self.graph.row(c.row()).expect("non-empty").right)
            .min()
            .unwrap_or(self.graph.n_v() + 1);
        if recomputed != threshold {
            self.mismatches.push(ThresholdMismatch {
                row,
                value,
                maintained: threshold,
                recomputed,
            });
        }
    }
}

/// A threshold update `t_value := min(t_value, right)`.
#[derive(Debug, Clone, Copy)]
struct Update {
    value: u32,
    right: u32,
    witness: Witness,
}

/// What the sweep keeps per column `c`: `Q_c` with its witness and the
/// threshold updates that take effect once column `c` is finished. The first
/// update is stored inline since most columns get at most one.
#[derive(Debug, Clone, Copy)]
struct Column {
    best_final: u32,
    best_final_witness: Witness,
    /// `value == 0` marks an empty slot.
    first_update: Update,
    /// Further updates, as a list through `Deferred::overflow`.
    more: u32,
}

const NO_UPDATE: Update = Update {
    value: 0,
    right: 0,
    witness: Witness::NONE,
};
const END: u32 = u32::MAX;

struct Deferred {
    columns: Vec<Column>,
    overflow: Vec<(Update, u32)>,
}

impl Deferred {
    fn new(n_v: usize) -> Self {
        let column = Column {
            best_final: 0,
            best_final_witness: Witness::NONE,
            first_update: NO_UPDATE,
            more: END,
        };
        Deferred {
            columns: vec![column; n_v + 1],
            overflow: Vec::new(),
        }
    }

    fn push(&mut self, column: usize, update: Update) {
        let c = &mut self.columns[column];
        if c.first_update.value == 0 {
            c.first_update = update;
        } else {
            self.overflow.push((update, c.more));
            c.more = (self.overflow.len() - 1) as u32;
        }
    }

    /// Removes and returns the updates of `column`.
    fn take(&mut self, column: usize) -> impl Iterator<Item = Update> + '_ {
        let c = &mut self.columns[column];
        let first = std::mem::replace(&mut c.first_update, NO_UPDATE);
        let mut at = std::mem::replace(&mut c.more, END);
        let overflow = &self.overflow;
        (first.value != 0).then_some(first).into_iter().chain(std::iter::from_fn(move || {
            let &(update, next) = overflow.get(at as usize)?;
            at = next;
            Some(update)
        }))
    }
}

/// How many rows ahead the column record of a row's right end is fetched.
const PREFETCH_ROWS: usize = 8;

/// Hints that `items[index]` will be read soon; out-of-range indices are ignored.
#[inline(always)]
fn prefetch<T>(items: &[T], index: usize) {
    #[cfg(target_arch = "x86_64")]
    if let Some(item) = items.get(index) {
        // SAFETY: prefetching has no architectural effect and cannot fault;
        // the pointer is derived from a live reference anyway.
        unsafe {
            use std::arch::x86_64::{_mm_prefetch, _MM_HINT_T0};
            _mm_prefetch::<_MM_HINT_T0>((item as *const T).cast());
        }
    }
    #[cfg(not(target_arch = "x86_64"))]
    let _ = (items, index);
}

/// Non-empty rows as `(left, right, row)`, sorted by `left`.
fn rows_by_left(g: &CompactConvexGraph) -> Vec<(u32, u32, u32)> {
    let present: Vec<(u32, u32, u32)> = g
        .rows()
        .iter()
        .enumerate()
        .filter_map(|(k, r)| r.map(|iv| (iv.left as u32, iv.right as u32, k as u32 + 1)))
        .collect();
    stable_bucket_order(&present, g.n_v(), |&(left, _, _)| left as usize)
}

fn sweep_observed<O: Observer>(g: &CompactConvexGraph, observer: &mut O) -> SweepState {
    let n_u = g.n_u();
    let n_v = g.n_v();
    let unset = n_v + 1;

    // Each value sits next to its witness so an update touches one cache line.
    let mut thresholds = vec![(unset as u32, Witness::NONE); n_u + 2];
    let mut finished = 0usize;
    let mut finished_witness = Witness::NONE;

    let order = rows_by_left(g);
    let mut deferred = Deferred::new(n_v);
    // Updates due at the end of the current column skip the column records.
    let mut this_column: Vec<Update> = Vec::new();
    let mut colorings = Vec::with_capacity(order.len());
    let mut base_pred = Vec::with_capacity(order.len());
    let mut upper_pred = Vec::with_capacity(order.len());
    let mut next_row = 0;

    for left in 1..=n_v {
        while let Some(&(row_left, right, row)) = order.get(next_row) {
            if row_left as usize != left {
                break;
            }
            next_row += 1;
            let (right, row) = (right as usize, row as usize);
            let index = colorings.len();
            if let Some(&(_, ahead, _)) = order.get(next_row + PREFETCH_ROWS) {
                prefetch(&deferred.columns, ahead as usize);
            }

            let w = finished + 1;
            let (t, t_witness) = thresholds[w];
            let t = t as usize;
            observer.row_start(row, w, t, &colorings);
            base_pred.push(finished_witness);

            let (top, top_witness) = if t < right {
                // Columns left..=t carry w, columns t+1..=right carry w + 1.
                // The (w, right) update for this row is dropped: t_w < right already.
                let upper = Witness::new(index, true);
                deferred.push(
                    t + 1,
                    Update {
                        value: w as u32 + 1,
                        right: right as u32,
                        witness: upper,
                    },
                );
                upper_pred.push(t_witness);
                colorings.push(RowColoring {
                    row: row as u32,
                    base: w as u32,
                    begin: left as u32,
                    switch: t as u32 + 1,
                    end: right as u32,
                });
                (w + 1, upper)
            } else {
                let base = Witness::new(index, false);
                this_column.push(Update {
                    value: w as u32,
                    right: right as u32,
                    witness: base,
                });
                upper_pred.push(Witness::NONE);
                colorings.push(RowColoring {
                    row: row as u32,
                    base: w as u32,
                    begin: left as u32,
                    switch: right as u32 + 1,
                    end: right as u32,
                });
                (w, base)
            };
            let c = &mut deferred.columns[right];
            if top as u32 > c.best_final {
                c.best_final = top as u32;
                c.best_final_witness = top_witness;
            }
        }
        let c = deferred.columns[left];
        if c.best_final as usize > finished {
            finished = c.best_final as usize;
            finished_witness = c.best_final_witness;
        }
        for e in deferred.take(left).chain(this_column.drain(..)) {
            let cell = &mut thresholds[e.value as usize];
            if e.right < cell.0 {
                *cell = (e.right, e.witness);
            }
        }
    }

    SweepState {
        thresholds,
        best_final: deferred.columns.iter().map(|c| c.best_final).collect(),
        finished_max: finished,
        colorings,
        finished_witness,
        base_pred,
        upper_pred,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n_v: usize, pairs: &[(usize, usize)]) -> CompactConvexGraph {
        CompactConvexGraph::from_pairs(n_v, pairs).unwrap()
    }

    #[test]
    fn disjoint_unit_rows() {
        let pairs: Vec<_> = (1..=5).map(|i| (i, i)).collect();
        let r = max_cardinality_induced_matching(&g(5, &pairs));
        assert_eq!(r.size, 5);
        assert_eq!(r.matching, (1..=5).map(|i| Edge::new(i, i)).collect::<Vec<_>>());
    }

    #[test]
    fn full_rows_give_one() {
        let r = max_cardinality_induced_matching(&g(6, &[(1, 6); 4]));
        assert_eq!(r.size, 1);
        assert_eq!(r.matching.len(), 1);
        assert!(r.colorings.iter().all(|c| c.base() == 1 && c.second().is_none()));
    }

    #[test]
    fn two_value_row() {
        // Row 3 sees value 1 in row 1 (ends at 2) left of its start, so it
        // switches to 2 after column 2.
        let graph = g(4, &[(1, 2), (3, 4), (2, 4)]);
        let r = max_cardinality_induced_matching(&graph);
        assert_eq!(r.size, 2);
        let c3 = r.colorings.iter().find(|c| c.row() == 3).unwrap();
        assert_eq!(c3.base(), 1);
        assert_eq!(c3.first(), Span { begin: 2, end: 2 });
        assert_eq!(c3.second(), Some(Span { begin: 3, end: 4 }));
        assert!(r.colorings.iter().all(|c| c.is_well_formed(&graph)));
        for pair in r.matching.windows(2) {
            assert!(graph.edges_independent(pair[0], pair[1]));
        }
    }

    #[test]
    fn upper_span_witness_uses_threshold_row() {
        // Row 2 has values 1 then 2; its upper value rests on row 1's base.
        let graph = g(4, &[(1, 2), (2, 4)]);
        let r = max_cardinality_induced_matching(&graph);
        assert_eq!(r.size, 2);
        assert_eq!(r.matching, vec![Edge::new(1, 1), Edge::new(2, 3)]);
    }

    #[test]
    fn empty_inputs() {
        let r = max_cardinality_induced_matching(&g(0, &[]));
        assert_eq!((r.size, r.matching.len(), r.colorings.len()), (0, 0, 0));
        let r = max_cardinality_induced_matching(&g(3, &[(0, 0), (0, 0)]));
        assert_eq!(r.size, 0);
        let state = sweep(&g(2, &[]));
        assert_eq!(matching_from_witnesses(&state, 0).unwrap(), vec![]);
    }

    #[test]
    fn reconstruction_detects_wrong_size() {
        let state = sweep(&g(2, &[(1, 1), (2, 2)]));
        assert_eq!(state.finished_max, 2);
        assert_eq!((state.threshold(1), state.threshold(2), state.threshold(3)), (Some(1), Some(2), Some(3)));
        assert_eq!((state.best_final(1), state.best_final(2)), (Some(1), Some(2)));
        assert_eq!((state.threshold(0), state.best_final(3)), (None, None));
        assert!(matches!(
            matching_from_witnesses(&state, 3),
            Err(ReconstructionFailure::WrongLength { .. }) | Err(ReconstructionFailure::BrokenLink { .. })
        ));
        assert!(matching_from_witnesses(&state, 1).is_err());
    }

    #[test]
    fn coloring_queries() {
        let c = RowColoring::split(1, 3, Span { begin: 2, end: 6 }, 5);
        assert_eq!(c.value_at(2), Some(3));
        assert_eq!(c.value_at(5), Some(4));
        assert_eq!(c.value_at(7), None);
        assert_eq!(c.max_value(), 4);
        assert_eq!(c.span_of(4), Some(Span { begin: 5, end: 6 }));
        assert!(c.is_well_formed(&g(6, &[(2, 6)])));
        assert!(!c.is_well_formed(&g(6, &[(1, 6)])));
        let single = RowColoring::single(2, 1, Span { begin: 1, end: 3 });
        assert_eq!((single.first(), single.second()), (Span { begin: 1, end: 3 }, None));
        assert_eq!(single.max_value(), 1);
    }

    #[test]
    #[should_panic(expected = "switch column outside the row")]
    fn split_needs_a_nonempty_first_span() {
        RowColoring::split(1, 1, Span { begin: 2, end: 4 }, 2);
    }

    #[test]
    fn thresholds_match_recomputation_on_example() {
        let graph = g(6, &[(1, 2), (2, 5), (3, 3), (1, 6), (4, 6), (5, 6), (6, 6)]);
        let (_, mismatches) = audit_thresholds(&graph);
        assert!(mismatches.is_empty(), "{mismatches:?}");
    }
}
