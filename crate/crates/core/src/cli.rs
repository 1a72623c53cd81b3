//! Command implementations behind the binary, operating on text so they can
//! be driven from tests without touching the filesystem.

use thiserror::Error;

use crate::bench::{self, BenchConfig};
use crate::certify::{check_certificate, Rejection, Verdict};
use crate::cover::{minimum_chain_cover, CoverError};
use crate::format::{
    parse_cover, parse_graph, parse_matching, parse_weighted_graph, write_cardinality_result, write_cover,
    write_graph, write_weighted_graph, write_weighted_result, ParseError,
};
use crate::gen::{generate, generate_weighted, GenError, GenSpec};
use crate::unweighted::max_cardinality_induced_matching;
use crate::weighted::max_weight_induced_matching;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{what}: {source}")]
    Parse {
        what: &'static str,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("internal certificate check failed: {0}")]
    SelfCheck(Rejection),
}

fn parsing<T>(what: &'static str, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Parse { what, source })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    Weighted,
    Unweighted { colorings: bool },
}

pub fn solve(graph_text: &str, mode: SolveMode) -> Result<String, CliError> {
    match mode {
        SolveMode::Weighted => {
            let g = parsing("graph", parse_weighted_graph(graph_text))?;
            Ok(write_weighted_result(&max_weight_induced_matching(&g)))
        }
        SolveMode::Unweighted { colorings } => {
            let g = parsing("graph", parse_graph(graph_text))?;
            Ok(write_cardinality_result(
                &max_cardinality_induced_matching(&g),
                colorings,
            ))
        }
    }
}

/// Computes a minimum chain cover and refuses to emit it unless it certifies
/// together with the matching from the same sweep.
pub fn cover(graph_text: &str) -> Result<String, CliError> {
    let g = parsing("graph", parse_graph(graph_text))?;
    let result = max_cardinality_induced_matching(&g);
    let cover = minimum_chain_cover(&g, &result.colorings)?;
    match check_certificate(&g, &result.matching, &cover) {
        Verdict::Valid => Ok(write_cover(&cover)),
        Verdict::Invalid(r) => Err(CliError::SelfCheck(r)),
    }
}

pub fn certify(graph_text: &str, matching_text: &str, cover_text: &str) -> Result<Verdict, CliError> {
    let g = parsing("graph", parse_graph(graph_text))?;
    let matching = parsing("matching", parse_matching(matching_text))?;
    let cover = parsing("cover", parse_cover(cover_text))?;
    Ok(check_certificate(&g, &matching, &cover))
}

/// Instance text; weighted format iff `spec.weight_range` is set.
pub fn gen(spec: &GenSpec) -> Result<String, CliError> {
    Ok(match spec.weight_range {
        Some(_) => write_weighted_graph(&generate_weighted(spec)?),
        None => write_graph(&generate(spec)?),
    })
}

pub fn bench(config: &BenchConfig) -> Result<String, CliError> {
    Ok(bench::to_csv(&bench::run(config)?))
}
