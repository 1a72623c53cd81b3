//! Minimum chain cover from the row colorings of the cardinality sweep.
//!
//! Chain `w` collects, for every row carrying value `w` on columns
//! `B..=E`, the interval `[B̂, E]` where `B̂` is the smallest `B` among rows
//! of the same value whose span ends strictly before `E` (or `B` itself).
//! Extending left this way makes the intervals of each chain nested, and the
//! extension never leaves the row's own interval. Spans are bucketed by `E`
//! and swept once, so construction is `O(n)`.

use thiserror::Error;

use crate::graph::{CompactConvexGraph, Edge};
use crate::sort::stable_bucket_order;
use crate::unweighted::RowColoring;

/// Extended interval `[b_hat, end]` of `row` inside one chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoverEntry {
    pub row: usize,
    pub b_hat: usize,
    pub end: usize,
}

/// `chains[w - 1]` holds the entries of chain `w`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainCover {
    pub w_star: usize,
    pub chains: Vec<Vec<CoverEntry>>,
}

impl ChainCover {
    /// All entries as `(w, entry)`, chain by chain.
    pub fn entries(&self) -> impl Iterator<Item = (usize, CoverEntry)> + '_ {
        self.chains
            .iter()
            .enumerate()
            .flat_map(|(k, chain)| chain.iter().map(move |&e| (k + 1, e)))
    }

    pub fn entry_count(&self) -> usize {
        self.chains.iter().map(Vec::len).sum()
    }

    /// Builds a cover from `(w, entry)` pairs, with `w_star` chains.
    pub fn from_entries(w_star: usize, entries: impl IntoIterator<Item = (usize, CoverEntry)>) -> Self {
        let mut chains = vec![Vec::new(); w_star];
        for (w, e) in entries {
            if w >= 1 && w <= w_star {
                chains[w - 1].push(e);
            }
        }
        ChainCover { w_star, chains }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("coloring of row {row} does not match the graph")]
    InconsistentColorings { row: usize },
    #[error("non-empty row {row} has no coloring")]
    MissingColoring { row: usize },
}

/// Per-span triple `(B, E, w)` tagged with its row.
#[derive(Debug, Clone, Copy)]
struct Triple {
    begin: usize,
    end: usize,
    value: usize,
    row: usize,
}

fn triples_by_end(g: &CompactConvexGraph, colorings: &[RowColoring]) -> Result<(usize, Vec<Triple>), CoverError> {
    let mut by_row: Vec<Option<&RowColoring>> = vec![None; g.n_u() + 1];
    for c in colorings {
        let row = c.row();
        if row == 0 || row > g.n_u() || by_row[row].is_some() || !c.is_well_formed(g) {
            return Err(CoverError::InconsistentColorings { row });
        }
        by_row[row] = Some(c);
    }
    let mut w_star = 0;
    let mut triples = Vec::with_capacity(2 * colorings.len());
    for (row, slot) in by_row.iter().enumerate().skip(1) {
        match slot {
            Some(c) => {
                w_star = w_star.max(c.max_value());
                triples.extend(c.spans().map(|(value, s)| Triple {
                    begin: s.begin,
                    end: s.end,
                    value,
                    row,
                }));
            }
            None if g.row(row).is_some() => return Err(CoverError::MissingColoring { row }),
            None => {}
        }
    }
    Ok((w_star, stable_bucket_order(&triples, g.n_v(), |t| t.end)))
}

pub fn minimum_chain_cover(g: &CompactConvexGraph, colorings: &[RowColoring]) -> Result<ChainCover, CoverError> {
    let (w_star, triples) = triples_by_end(g, colorings)?;
    let unset = g.n_v() + 1;
    let mut lowest_begin = vec![unset; w_star + 1];
    let mut chains = vec![Vec::new(); w_star];

    let mut k = 0;
    while k < triples.len() {
        let end = triples[k].end;
        let group_end = triples[k..]
            .iter()
            .position(|t| t.end != end)
            .map_or(triples.len(), |p| k + p);
        let group = &triples[k..group_end];
        // Assign every extension before any of this column's spans update the
        // minima, so spans sharing an end do not extend each other.
        for t in group {
            chains[t.value - 1].push(CoverEntry {
                row: t.row,
                b_hat: t.begin.min(lowest_begin[t.value]),
                end: t.end,
            });
        }
        for t in group {
            lowest_begin[t.value] = lowest_begin[t.value].min(t.begin);
        }
        k = group_end;
    }
    Ok(ChainCover { w_star, chains })
}

/// Lists the edges of every chain.
pub fn expand_cover_edges(cover: &ChainCover) -> Vec<Vec<Edge>> {
    cover
        .chains
        .iter()
        .map(|chain| {
            chain
                .iter()
                .flat_map(|e| (e.b_hat..=e.end).map(move |v| Edge::new(e.row, v)))
                .collect()
        })
        .collect()
}

/// An entry whose extended start differs between the formulation over
/// original starts and the one over extended starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionMismatch {
    pub value: usize,
    pub row: usize,
    pub from_starts: usize,
    pub from_extended: usize,
    pub constructed: usize,
}

/// Recomputes every `B̂` by brute force in two ways, once as the minimum over
/// original starts `B` of spans ending earlier, once as the minimum over the
/// already extended `B̂` of those spans, and compares both with the sweep.
pub fn audit_extension(
    g: &CompactConvexGraph,
    colorings: &[RowColoring],
) -> Result<Vec<ExtensionMismatch>, CoverError> {
    let cover = minimum_chain_cover(g, colorings)?;
    let (_, triples) = triples_by_end(g, colorings)?;
    let mut mismatches = Vec::new();
    // Triples are sorted by end, so every span ending earlier is already in
    // `extended` when a triple is reached.
    let mut extended: Vec<(usize, usize, usize)> = Vec::new();
    for t in &triples {
        let from_starts = triples
            .iter()
            .filter(|o| o.value == t.value && o.end < t.end)
            .map(|o| o.begin)
            .fold(t.begin, usize::min);
        let from_extended = extended
            .iter()
            .filter(|&&(value, end, _)| value == t.value && end < t.end)
            .map(|&(_, _, b_hat)| b_hat)
            .fold(t.begin, usize::min);
        extended.push((t.value, t.end, from_extended));
        let constructed = cover.chains[t.value - 1]
            .iter()
            .find(|e| e.row == t.row)
            .map_or(0, |e| e.b_hat);
        if from_starts != from_extended || from_starts != constructed {
            mismatches.push(ExtensionMismatch {
                value: t.value,
                row: t.row,
                from_starts,
                from_extended,
                constructed,
            });
        }
    }
    Ok(mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unweighted::{max_cardinality_induced_matching, Span};

    fn cover_of(n_v: usize, pairs: &[(usize, usize)]) -> (CompactConvexGraph, ChainCover) {
        let g = CompactConvexGraph::from_pairs(n_v, pairs).unwrap();
        let r = max_cardinality_induced_matching(&g);
        let cover = minimum_chain_cover(&g, &r.colorings).unwrap();
        assert_eq!(cover.w_star, r.size);
        (g, cover)
    }

    #[test]
    fn disjoint_unit_rows() {
        let pairs: Vec<_> = (1..=4).map(|i| (i, i)).collect();
        let (_, cover) = cover_of(4, &pairs);
        assert_eq!(cover.w_star, 4);
        for w in 1..=4 {
            assert_eq!(cover.chains[w - 1], vec![CoverEntry { row: w, b_hat: w, end: w }]);
        }
    }

    #[test]
    fn full_rows_single_chain() {
        let (_, cover) = cover_of(5, &[(1, 5); 3]);
        assert_eq!(cover.w_star, 1);
        assert_eq!(cover.chains[0].len(), 3);
        assert!(cover.chains[0].iter().all(|e| e.b_hat == 1 && e.end == 5));
    }

    #[test]
    fn expand_single_row() {
        let cover = ChainCover {
            w_star: 1,
            chains: vec![vec![CoverEntry { row: 1, b_hat: 1, end: 2 }]],
        };
        assert_eq!(expand_cover_edges(&cover), vec![vec![Edge::new(1, 1), Edge::new(1, 2)]]);
        assert!(expand_cover_edges(&ChainCover::default()).is_empty());
    }

    #[test]
    fn extension_reaches_left() {
        let g = CompactConvexGraph::from_pairs(4, &[(1, 1), (2, 4), (2, 3), (3, 4)]).unwrap();
        let r = max_cardinality_induced_matching(&g);
        assert!(audit_extension(&g, &r.colorings).unwrap().is_empty());
        let cover = minimum_chain_cover(&g, &r.colorings).unwrap();
        for (_, e) in cover.entries() {
            assert!(g.row(e.row).unwrap().left <= e.b_hat);
        }
    }

    #[test]
    fn rejects_foreign_colorings() {
        let g = CompactConvexGraph::from_pairs(3, &[(1, 2)]).unwrap();
        let bad = RowColoring::single(1, 1, Span { begin: 1, end: 3 });
        assert_eq!(
            minimum_chain_cover(&g, &[bad]),
            Err(CoverError::InconsistentColorings { row: 1 })
        );
        assert_eq!(minimum_chain_cover(&g, &[]), Err(CoverError::MissingColoring { row: 1 }));
    }
}
