//! Induced matchings and chain covers on convex bipartite graphs.
//!
//! * [`weighted`]: maximum-weight induced matching in `O(n + m)`.
//! * [`unweighted`]: maximum-cardinality induced matching in `O(n)` from the
//!   compact representation, plus the compressed DP rows.
//! * [`cover`]: minimum chain cover in `O(n)` from those rows.
//! * [`certify`]: linear-time check of a matching/cover optimality certificate.
//! * [`oracle`]: brute-force and naive references for testing.

pub mod bench;
pub mod certify;
pub mod cli;
pub mod cover;
pub mod format;
pub mod gen;
pub mod graph;
pub mod oracle;
mod sort;
pub mod unweighted;
pub mod weighted;

pub use certify::{check_certificate, check_chain_cover, check_induced_matching, Rejection, RejectionKind, Verdict};
pub use cover::{expand_cover_edges, minimum_chain_cover, ChainCover, CoverEntry};
pub use graph::{CompactConvexGraph, Edge, GraphError, InducedMatching, Interval, WeightedConvexGraph};
pub use unweighted::{max_cardinality_induced_matching, CardinalityResult, RowColoring, Span};
pub use weighted::{max_weight_induced_matching, MatchingResult};
