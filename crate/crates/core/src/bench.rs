//! Wall-clock scaling runs of the solvers, reported as CSV.
//!
//! Instances are generated in memory; only the solver call is timed.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::gen::{generate, generate_weighted, GenError, GenSpec, Model};
use crate::oracle::naive_dp;
use crate::unweighted::max_cardinality_induced_matching;
use crate::weighted::max_weight_induced_matching;

pub const CSV_HEADER: &str = "algorithm,n_u,n_v,m,nanos";

/// Instances with more edges skip the quadratic baseline.
pub const NAIVE_EDGE_CAP: u64 = 20_000;
/// Instances with more edges skip the weighted solver (memory is linear in `m`).
pub const WEIGHTED_EDGE_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    /// Each size `n` runs with `n_u = n_v = n`.
    pub sizes: Vec<usize>,
    pub models: Vec<Model>,
    pub repetitions: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    /// `solver@model`, e.g. `unweighted@uniform-intervals`.
    pub algorithm: String,
    pub n_u: usize,
    pub n_v: usize,
    pub m: u64,
    pub nanos: u128,
}

/// Runs `f` `repetitions` times and returns the fastest run.
pub fn fastest_of<T>(repetitions: usize, mut f: impl FnMut() -> T) -> Duration {
    (0..repetitions.max(1))
        .map(|_| {
            let start = Instant::now();
            black_box(f());
            start.elapsed()
        })
        .min()
        .expect("at least one repetition")
}

pub fn run(config: &BenchConfig) -> Result<Vec<BenchRow>, GenError> {
    let mut rows = Vec::new();
    for &n in &config.sizes {
        for &model in &config.models {
            let spec = GenSpec {
                n_u: n,
                n_v: n,
                model,
                weight_range: Some((1, 100)),
                seed: config.seed,
            };
            let graph = generate(&spec)?;
            let m = graph.edge_count();
            let record = |solver: &str, time: Duration| BenchRow {
                algorithm: format!("{solver}@{model}"),
                n_u: graph.n_u(),
                n_v: graph.n_v(),
                m,
                nanos: time.as_nanos(),
            };
            for _ in 0..config.repetitions {
                let t = fastest_of(1, || max_cardinality_induced_matching(&graph).size);
                rows.push(record("unweighted", t));
            }
            if m > WEIGHTED_EDGE_CAP {
                continue;
            }
            let weighted = generate_weighted(&spec)?;
            for _ in 0..config.repetitions {
                let t = fastest_of(1, || max_weight_induced_matching(&weighted).total);
                rows.push(record("weighted", t));
            }
            if m <= NAIVE_EDGE_CAP {
                for _ in 0..config.repetitions {
                    let t = fastest_of(1, || naive_dp(&weighted).max_value());
                    rows.push(record("naive_dp", t));
                }
            }
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.algorithm, r.n_u, r.n_v, r.m, r.nanos).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sizes_give_header_only() {
        let config = BenchConfig {
            sizes: vec![],
            models: vec![Model::UniformIntervals],
            repetitions: 3,
            seed: 1,
        };
        let rows = run(&config).unwrap();
        assert_eq!(to_csv(&rows), "algorithm,n_u,n_v,m,nanos\n");
    }

    #[test]
    fn rows_per_solver_and_caps() {
        let config = BenchConfig {
            sizes: vec![50, 1000],
            models: vec![Model::FullIntervals],
            repetitions: 2,
            seed: 1,
        };
        let rows = run(&config).unwrap();
        let count = |alg: &str, n: usize| rows.iter().filter(|r| r.algorithm == alg && r.n_u == n).count();
        assert_eq!(count("unweighted@full-intervals", 50), 2);
        assert_eq!(count("weighted@full-intervals", 50), 2);
        assert_eq!(count("naive_dp@full-intervals", 50), 2);
        // m = 10^6 is above the naive cap.
        assert_eq!(count("naive_dp@full-intervals", 1000), 0);
        assert_eq!(count("weighted@full-intervals", 1000), 2);
        assert!(to_csv(&rows).lines().skip(1).all(|l| l.split(',').count() == 5));
    }
}
