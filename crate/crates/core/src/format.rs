//! Line-oriented text formats for graphs, matchings, colorings and covers.
//!
//! Graph: `n_u n_v`, then one `L R` line per row (`0 0` for an empty row);
//! the weighted variant appends the `R - L + 1` edge weights to each line.
//! Matching: `size` (or `total size` for weighted results), then `u v` lines.
//! Cover: `w_star k`, then `k` lines `w row b_hat e` sorted by `(w, e)`.
//! Blank lines are ignored; all indices are 1-based.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::cover::{ChainCover, CoverEntry};
use crate::graph::{CompactConvexGraph, Edge, Interval, WeightedConvexGraph};
use crate::unweighted::{CardinalityResult, RowColoring};
use crate::weighted::MatchingResult;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

struct Records<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
    last_line: usize,
}

impl<'a> Records<'a> {
    fn new(text: &'a str) -> Self {
        Records {
            lines: text.lines().enumerate(),
            last_line: 0,
        }
    }

    /// Next non-blank line as `(line number, tokens)`.
    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (idx, line) in self.lines.by_ref() {
            self.last_line = idx + 1;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !tokens.is_empty() {
                return Some((idx + 1, tokens));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        self.next()
            .ok_or_else(|| err(self.last_line + 1, format!("unexpected end of input, expected {what}")))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.next() {
            Some((line, _)) => Err(err(line, "unexpected trailing data")),
            None => Ok(()),
        }
    }
}

fn numbers<T: FromStr>(line: usize, tokens: &[&str]) -> Result<Vec<T>, ParseError> {
    tokens
        .iter()
        .map(|t| t.parse().map_err(|_| err(line, format!("invalid number `{t}`"))))
        .collect()
}

fn exactly<const N: usize>(line: usize, tokens: &[&str], what: &str) -> Result<[usize; N], ParseError> {
    if tokens.len() != N {
        return Err(err(line, format!("expected {what}")));
    }
    let values = numbers::<usize>(line, tokens)?;
    Ok(values.try_into().expect("length checked"))
}

fn parse_row(line: usize, left: usize, right: usize, n_v: usize) -> Result<Option<Interval>, ParseError> {
    if left == 0 && right == 0 {
        return Ok(None);
    }
    if left < 1 || left > right || right > n_v {
        return Err(err(line, format!("invalid interval [{left}, {right}] for n_v = {n_v}")));
    }
    Ok(Some(Interval::new(left, right)))
}

pub fn parse_graph(text: &str) -> Result<CompactConvexGraph, ParseError> {
    let mut records = Records::new(text);
    let (line, tokens) = records.expect("header `n_u n_v`")?;
    let [n_u, n_v] = exactly::<2>(line, &tokens, "header `n_u n_v`")?;
    let mut rows = Vec::with_capacity(n_u);
    for _ in 0..n_u {
        let (line, tokens) = records.expect("row `L R`")?;
        let [l, r] = exactly::<2>(line, &tokens, "row `L R`")?;
        rows.push(parse_row(line, l, r, n_v)?);
    }
    records.finish()?;
    CompactConvexGraph::new(n_v, rows).map_err(|e| err(0, e.to_string()))
}

pub fn parse_weighted_graph(text: &str) -> Result<WeightedConvexGraph, ParseError> {
    let mut records = Records::new(text);
    let (line, tokens) = records.expect("header `n_u n_v`")?;
    let [n_u, n_v] = exactly::<2>(line, &tokens, "header `n_u n_v`")?;
    let mut rows = Vec::with_capacity(n_u);
    let mut weights = Vec::with_capacity(n_u);
    for _ in 0..n_u {
        let (line, tokens) = records.expect("row `L R weights...`")?;
        if tokens.len() < 2 {
            return Err(err(line, "expected row `L R weights...`"));
        }
        let [l, r] = exactly::<2>(line, &tokens[..2], "row `L R weights...`")?;
        let row = parse_row(line, l, r, n_v)?;
        let expected = row.map_or(0, |iv| iv.len());
        if tokens.len() - 2 != expected {
            return Err(err(
                line,
                format!("expected {expected} weights, found {}", tokens.len() - 2),
            ));
        }
        rows.push(row);
        weights.push(numbers::<i64>(line, &tokens[2..])?);
    }
    records.finish()?;
    let graph = CompactConvexGraph::new(n_v, rows).map_err(|e| err(0, e.to_string()))?;
    WeightedConvexGraph::new(graph, weights).map_err(|e| err(0, e.to_string()))
}

pub fn write_graph(g: &CompactConvexGraph) -> String {
    let mut out = format!("{} {}\n", g.n_u(), g.n_v());
    for row in g.rows() {
        let (l, r) = row.map_or((0, 0), |iv| (iv.left, iv.right));
        writeln!(out, "{l} {r}").unwrap();
    }
    out
}

pub fn write_weighted_graph(g: &WeightedConvexGraph) -> String {
    let graph = g.graph();
    let mut out = format!("{} {}\n", graph.n_u(), graph.n_v());
    for (idx, row) in graph.rows().iter().enumerate() {
        match row {
            None => out.push_str("0 0\n"),
            Some(iv) => {
                write!(out, "{} {}", iv.left, iv.right).unwrap();
                for w in g.row_weights(idx + 1) {
                    write!(out, " {w}").unwrap();
                }
                out.push('\n');
            }
        }
    }
    out
}

fn write_edges(out: &mut String, edges: &[Edge]) {
    for e in edges {
        writeln!(out, "{} {}", e.u, e.v).unwrap();
    }
}

/// `total k`, then the `k` edges.
pub fn write_weighted_result(r: &MatchingResult) -> String {
    let mut out = format!("{} {}\n", r.total, r.edges.len());
    write_edges(&mut out, &r.edges);
    out
}

/// `size`, the edges, and optionally one `i w B E [B2 E2]` line per row in
/// row order.
pub fn write_cardinality_result(r: &CardinalityResult, with_colorings: bool) -> String {
    let mut out = format!("{}\n", r.size);
    write_edges(&mut out, &r.matching);
    if with_colorings {
        out.push_str(&write_colorings(&r.colorings));
    }
    out
}

pub fn write_colorings(colorings: &[RowColoring]) -> String {
    let mut sorted: Vec<&RowColoring> = colorings.iter().collect();
    sorted.sort_by_key(|c| c.row());
    let mut out = String::new();
    for c in sorted {
        let first = c.first();
        write!(out, "{} {} {} {}", c.row(), c.base(), first.begin, first.end).unwrap();
        if let Some(s) = c.second() {
            write!(out, " {} {}", s.begin, s.end).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Reads a matching in either result format. Lines after the `k` edges
/// (such as colorings) are ignored.
pub fn parse_matching(text: &str) -> Result<Vec<Edge>, ParseError> {
    let mut records = Records::new(text);
    let (line, tokens) = records.expect("header `size` or `total size`")?;
    let k = match tokens.len() {
        1 => numbers::<usize>(line, &tokens)?[0],
        2 => {
            numbers::<i64>(line, &tokens[..1])?;
            numbers::<usize>(line, &tokens[1..])?[0]
        }
        _ => return Err(err(line, "expected header `size` or `total size`")),
    };
    let mut edges = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, tokens) = records.expect("edge `u v`")?;
        let [u, v] = exactly::<2>(line, &tokens, "edge `u v`")?;
        edges.push(Edge::new(u, v));
    }
    Ok(edges)
}

pub fn write_cover(cover: &ChainCover) -> String {
    let mut out = format!("{} {}\n", cover.w_star, cover.entry_count());
    for (k, chain) in cover.chains.iter().enumerate() {
        let mut entries = chain.clone();
        entries.sort_by_key(|e| e.end);
        for e in entries {
            writeln!(out, "{} {} {} {}", k + 1, e.row, e.b_hat, e.end).unwrap();
        }
    }
    out
}

/// Reads a cover. Entries naming a chain beyond `w_star` are kept (the cover
/// then has more chains than it claims) so a checker can report them.
pub fn parse_cover(text: &str) -> Result<ChainCover, ParseError> {
    let mut records = Records::new(text);
    let (line, tokens) = records.expect("header `w_star k`")?;
    let [w_star, k] = exactly::<2>(line, &tokens, "header `w_star k`")?;
    let mut entries = Vec::with_capacity(k);
    let mut chains = w_star;
    for _ in 0..k {
        let (line, tokens) = records.expect("entry `w row b_hat e`")?;
        let [w, row, b_hat, end] = exactly::<4>(line, &tokens, "entry `w row b_hat e`")?;
        if w == 0 {
            return Err(err(line, "chain index must be at least 1"));
        }
        chains = chains.max(w);
        entries.push((w, CoverEntry { row, b_hat, end }));
    }
    records.finish()?;
    let mut cover = ChainCover::from_entries(chains, entries);
    cover.w_star = w_star;
    Ok(cover)
}
