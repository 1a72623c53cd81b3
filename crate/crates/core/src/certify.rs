//! Linear-time checking of an optimality certificate: an induced matching and
//! a chain cover with as many chains as the matching has edges.
//!
//! Nothing here relies on how the matching or the cover were produced; all
//! input is treated as untrusted and every index is range-checked before use.
//! Sorting is done with counting sorts keyed on `U`- and `V`-indices.

use std::fmt;

use crate::cover::{ChainCover, CoverEntry};
use crate::graph::{CompactConvexGraph, Edge};
use crate::sort::stable_bucket_order;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    U,
    V,
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    EdgeNotInGraph { edge: Edge },
    DuplicateEndpoint { side: Side, vertex: usize },
    DependentPair { first: Edge, second: Edge },
    /// Chain index outside `1..=w_star`, or an empty interval.
    MalformedEntry { w: usize, row: usize, b_hat: usize, end: usize },
    /// Entry for a row that does not exist, is empty, or whose interval
    /// leaves the row's neighbourhood.
    OutsideGraph { row: usize },
    /// Two neighbourhoods in chain `w` are not comparable under inclusion.
    NotNested { w: usize, first_row: usize, second_row: usize },
    /// The entries of `row` within chain `w` do not form one interval.
    NonInterval { w: usize, row: usize },
    CoverageGap { row: usize, position: usize },
    SizeMismatch { matching_size: usize, w_star: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RejectionKind {
    EdgeNotInGraph,
    DuplicateEndpoint,
    DependentPair,
    MalformedEntry,
    OutsideGraph,
    NotNested,
    NonInterval,
    CoverageGap,
    SizeMismatch,
}

impl Rejection {
    pub fn kind(&self) -> RejectionKind {
        match self {
            Rejection::EdgeNotInGraph { .. } => RejectionKind::EdgeNotInGraph,
            Rejection::DuplicateEndpoint { .. } => RejectionKind::DuplicateEndpoint,
            Rejection::DependentPair { .. } => RejectionKind::DependentPair,
            Rejection::MalformedEntry { .. } => RejectionKind::MalformedEntry,
            Rejection::OutsideGraph { .. } => RejectionKind::OutsideGraph,
            Rejection::NotNested { .. } => RejectionKind::NotNested,
            Rejection::NonInterval { .. } => RejectionKind::NonInterval,
            Rejection::CoverageGap { .. } => RejectionKind::CoverageGap,
            Rejection::SizeMismatch { .. } => RejectionKind::SizeMismatch,
        }
    }
}

impl fmt::Display for RejectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Machine-readable form: `Category key=value ...`.
impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind())?;
        match *self {
            Rejection::EdgeNotInGraph { edge } => write!(f, " u={} v={}", edge.u, edge.v),
            Rejection::DuplicateEndpoint { side, vertex } => {
                let side = if side == Side::U { "U" } else { "V" };
                write!(f, " side={side} vertex={vertex}")
            }
            Rejection::DependentPair { first, second } => write!(
                f,
                " first_u={} first_v={} second_u={} second_v={}",
                first.u, first.v, second.u, second.v
            ),
            Rejection::MalformedEntry { w, row, b_hat, end } => {
                write!(f, " w={w} row={row} b_hat={b_hat} e={end}")
            }
            Rejection::OutsideGraph { row } => write!(f, " row={row}"),
            Rejection::NotNested {
                w,
                first_row,
                second_row,
            } => write!(f, " w={w} first_row={first_row} second_row={second_row}"),
            Rejection::NonInterval { w, row } => write!(f, " w={w} row={row}"),
            Rejection::CoverageGap { row, position } => write!(f, " row={row} position={position}"),
            Rejection::SizeMismatch {
                matching_size,
                w_star,
            } => write!(f, " matching_size={matching_size} w_star={w_star}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Rejection),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(r) => Some(r),
        }
    }

    pub fn kind(&self) -> Option<RejectionKind> {
        self.rejection().map(Rejection::kind)
    }
}

impl From<Result<(), Rejection>> for Verdict {
    fn from(r: Result<(), Rejection>) -> Self {
        match r {
            Ok(()) => Verdict::Valid,
            Err(e) => Verdict::Invalid(e),
        }
    }
}

/// Checks membership, distinct endpoints, and independence of edges that are
/// consecutive in `V`-order; independence of consecutive pairs implies
/// independence of all pairs.
pub fn check_induced_matching(g: &CompactConvexGraph, matching: &[Edge]) -> Verdict {
    matching_result(g, matching).into()
}

fn matching_result(g: &CompactConvexGraph, matching: &[Edge]) -> Result<(), Rejection> {
    for &edge in matching {
        if !g.contains_edge(edge) {
            return Err(Rejection::EdgeNotInGraph { edge });
        }
    }
    let mut seen_u = vec![false; g.n_u() + 1];
    let mut seen_v = vec![false; g.n_v() + 1];
    for e in matching {
        if std::mem::replace(&mut seen_u[e.u], true) {
            return Err(Rejection::DuplicateEndpoint {
                side: Side::U,
                vertex: e.u,
            });
        }
        if std::mem::replace(&mut seen_v[e.v], true) {
            return Err(Rejection::DuplicateEndpoint {
                side: Side::V,
                vertex: e.v,
            });
        }
    }
    let sorted = stable_bucket_order(matching, g.n_v(), |e| e.v);
    for pair in sorted.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let (ia, ib) = (g.row(a.u).expect("checked"), g.row(b.u).expect("checked"));
        if ia.contains(b.v) || ib.contains(a.v) {
            return Err(Rejection::DependentPair { first: a, second: b });
        }
    }
    Ok(())
}

/// Checks that every chain is a chain graph (neighbourhoods nested) and that
/// the chains together cover exactly the edges of `g`.
pub fn check_chain_cover(g: &CompactConvexGraph, cover: &ChainCover) -> Verdict {
    cover_result(g, cover).into()
}

#[derive(Debug, Clone, Copy)]
struct Quad {
    w: usize,
    row: usize,
    b_hat: usize,
    end: usize,
}

fn cover_result(g: &CompactConvexGraph, cover: &ChainCover) -> Result<(), Rejection> {
    let mut quads = Vec::with_capacity(cover.entry_count());
    for (k, chain) in cover.chains.iter().enumerate() {
        let w = k + 1;
        for &CoverEntry { row, b_hat, end } in chain {
            if w > cover.w_star || b_hat == 0 || b_hat > end {
                return Err(Rejection::MalformedEntry { w, row, b_hat, end });
            }
            match g.row(row) {
                Some(iv) if iv.left <= b_hat && end <= iv.right => {}
                _ => return Err(Rejection::OutsideGraph { row }),
            }
            quads.push(Quad { w, row, b_hat, end });
        }
    }
    let (n_u, n_v, w_star) = (g.n_u(), g.n_v(), cover.w_star);

    // A row listed more than once in a chain contributes the union of its
    // intervals as neighbourhood; sort by (w, row, b_hat) and merge.
    let by_b = stable_bucket_order(&quads, n_v, |q| q.b_hat);
    let by_row = stable_bucket_order(&by_b, n_u, |q| q.row);
    let grouped = stable_bucket_order(&by_row, w_star, |q| q.w);
    let mut merged: Vec<Quad> = Vec::with_capacity(grouped.len());
    for q in grouped {
        match merged.last_mut() {
            Some(last) if last.w == q.w && last.row == q.row => {
                if q.b_hat > last.end + 1 {
                    return Err(Rejection::NonInterval { w: q.w, row: q.row });
                }
                last.end = last.end.max(q.end);
            }
            _ => merged.push(q),
        }
    }

    // Nesting: sort by (w, b_hat, -end, row); within a chain ends must not increase.
    let by_row = stable_bucket_order(&merged, n_u, |q| q.row);
    let by_end_desc = stable_bucket_order(&by_row, n_v, |q| n_v - q.end);
    let by_b = stable_bucket_order(&by_end_desc, n_v, |q| q.b_hat);
    let nested = stable_bucket_order(&by_b, w_star, |q| q.w);
    for pair in nested.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.w == b.w && b.end > a.end {
            return Err(Rejection::NotNested {
                w: a.w,
                first_row: a.row,
                second_row: b.row,
            });
        }
    }

    // Coverage: sort by (row, b_hat, end, w) and grow each row's union from L.
    let by_w = stable_bucket_order(&quads, w_star, |q| q.w);
    let by_end = stable_bucket_order(&by_w, n_v, |q| q.end);
    let by_b = stable_bucket_order(&by_end, n_v, |q| q.b_hat);
    let ordered = stable_bucket_order(&by_b, n_u, |q| q.row);
    let mut k = 0;
    for (idx, row) in g.rows().iter().enumerate() {
        let u = idx + 1;
        let Some(iv) = row else { continue };
        let mut reach = iv.left - 1;
        while k < ordered.len() && ordered[k].row == u {
            let q = ordered[k];
            if q.b_hat > reach + 1 {
                return Err(Rejection::CoverageGap {
                    row: u,
                    position: reach + 1,
                });
            }
            reach = reach.max(q.end);
            k += 1;
        }
        if reach < iv.right {
            return Err(Rejection::CoverageGap {
                row: u,
                position: reach + 1,
            });
        }
    }
    Ok(())
}

/// Accepts iff the matching is induced, the cover is a chain cover, and both
/// have the same size, which proves both optimal.
pub fn check_certificate(g: &CompactConvexGraph, matching: &[Edge], cover: &ChainCover) -> Verdict {
    let result = matching_result(g, matching)
        .and_then(|()| cover_result(g, cover))
        .and_then(|()| {
            if matching.len() == cover.w_star {
                return Ok(());
            }
            Err(Rejection::SizeMismatch {
                matching_size: matching.len(),
                w_star: cover.w_star,
            })
        });
    result.into()
}
