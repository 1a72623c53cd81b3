//! Seeded random instance generation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{CompactConvexGraph, Interval, WeightedConvexGraph};

pub const DEFAULT_FIXED_LENGTH: usize = 10;

/// How row intervals are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Two endpoints uniform in `1..=n_v`, ordered.
    UniformIntervals,
    /// Intervals of the given length (clipped to `n_v`) with uniform start.
    FixedLength(usize),
    /// Right endpoints drawn from about `sqrt(n_u)` shared values, left
    /// endpoints uniform below them; many long intervals share an endpoint.
    SharedEndpointAdversarial,
    /// Every row is `[1, n_v]`.
    FullIntervals,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::UniformIntervals => f.write_str("uniform-intervals"),
            Model::FixedLength(k) if *k == DEFAULT_FIXED_LENGTH => f.write_str("fixed-length"),
            Model::FixedLength(k) => write!(f, "fixed-length:{k}"),
            Model::SharedEndpointAdversarial => f.write_str("shared-endpoint-adversarial"),
            Model::FullIntervals => f.write_str("full-intervals"),
        }
    }
}

impl FromStr for Model {
    type Err = GenError;

    /// Accepts the display names; `fixed-length:K` sets the length.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform-intervals" => Ok(Model::UniformIntervals),
            "fixed-length" => Ok(Model::FixedLength(DEFAULT_FIXED_LENGTH)),
            "shared-endpoint-adversarial" => Ok(Model::SharedEndpointAdversarial),
            "full-intervals" => Ok(Model::FullIntervals),
            other => match other.strip_prefix("fixed-length:").map(str::parse) {
                Some(Ok(k)) if k > 0 => Ok(Model::FixedLength(k)),
                _ => Err(GenError::UnknownModel(other.to_string())),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub n_u: usize,
    pub n_v: usize,
    pub model: Model,
    pub weight_range: Option<(i64, i64)>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("weight range [{0}, {1}] is empty")]
    EmptyWeightRange(i64, i64),
    #[error("n_v must be positive when n_u is positive")]
    NoColumns,
}

impl GenSpec {
    fn validate(&self) -> Result<(), GenError> {
        if let Some((lo, hi)) = self.weight_range {
            if lo > hi {
                return Err(GenError::EmptyWeightRange(lo, hi));
            }
        }
        if self.n_u > 0 && self.n_v == 0 {
            return Err(GenError::NoColumns);
        }
        Ok(())
    }
}

fn draw_rows(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Vec<Option<Interval>> {
    let n_v = spec.n_v;
    let groups = ((spec.n_u as f64).sqrt().ceil() as usize).clamp(1, n_v.max(1));
    (0..spec.n_u)
        .map(|_| {
            let iv = match spec.model {
                Model::UniformIntervals => {
                    let a = rng.gen_range(1..=n_v);
                    let b = rng.gen_range(1..=n_v);
                    Interval::new(a.min(b), a.max(b))
                }
                Model::FixedLength(k) => {
                    let len = k.clamp(1, n_v);
                    let left = rng.gen_range(1..=n_v - len + 1);
                    Interval::new(left, left + len - 1)
                }
                Model::SharedEndpointAdversarial => {
                    let k = rng.gen_range(1..=groups);
                    let right = (n_v * k / groups).max(1);
                    Interval::new(rng.gen_range(1..=right), right)
                }
                Model::FullIntervals => Interval::new(1, n_v),
            };
            Some(iv)
        })
        .collect()
}

/// Deterministic instance for `spec`; weights, if any, are ignored.
pub fn generate(spec: &GenSpec) -> Result<CompactConvexGraph, GenError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let rows = draw_rows(spec, &mut rng);
    Ok(CompactConvexGraph::new(spec.n_v, rows).expect("generated intervals are valid"))
}

/// Deterministic weighted instance; weights are uniform in `weight_range`
/// (unit weights if none is given).
pub fn generate_weighted(spec: &GenSpec) -> Result<WeightedConvexGraph, GenError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let rows = draw_rows(spec, &mut rng);
    let graph = CompactConvexGraph::new(spec.n_v, rows).expect("generated intervals are valid");
    let (lo, hi) = spec.weight_range.unwrap_or((1, 1));
    Ok(WeightedConvexGraph::from_fn(graph, |_| rng.gen_range(lo..=hi)))
}

/// Mean of `|a - b| + 1` for `a`, `b` independent and uniform on `1..=n_v`.
pub fn expected_uniform_length(n_v: usize) -> f64 {
    let n = n_v as f64;
    (n * n - 1.0) / (3.0 * n) + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(model: Model) -> GenSpec {
        GenSpec {
            n_u: 50,
            n_v: 40,
            model,
            weight_range: Some((-3, 3)),
            seed: 7,
        }
    }

    #[test]
    fn same_seed_same_instance() {
        for model in [
            Model::UniformIntervals,
            Model::FixedLength(5),
            Model::SharedEndpointAdversarial,
            Model::FullIntervals,
        ] {
            let s = spec(model);
            assert_eq!(generate_weighted(&s).unwrap(), generate_weighted(&s).unwrap());
            let other = GenSpec { seed: 8, ..s.clone() };
            if model != Model::FullIntervals {
                assert_ne!(generate(&s).unwrap(), generate(&other).unwrap());
            }
        }
    }

    #[test]
    fn full_intervals() {
        let g = generate(&spec(Model::FullIntervals)).unwrap();
        assert!(g.rows().iter().all(|r| *r == Some(Interval::new(1, 40))));
    }

    #[test]
    fn fixed_length_and_adversarial_shapes() {
        let g = generate(&spec(Model::FixedLength(5))).unwrap();
        assert!(g.rows().iter().flatten().all(|iv| iv.len() == 5));
        let g = generate(&spec(Model::SharedEndpointAdversarial)).unwrap();
        let mut ends: Vec<usize> = g.rows().iter().flatten().map(|iv| iv.right).collect();
        ends.sort();
        ends.dedup();
        assert!(ends.len() <= 8);
    }

    #[test]
    fn weights_in_range() {
        let g = generate_weighted(&spec(Model::UniformIntervals)).unwrap();
        for e in g.graph().edges() {
            assert!((-3..=3).contains(&g.weight(e).unwrap()));
        }
    }

    #[test]
    fn uniform_mean_length_matches_closed_form() {
        let s = GenSpec {
            n_u: 10_000,
            n_v: 1_000,
            model: Model::UniformIntervals,
            weight_range: None,
            seed: 2024,
        };
        let g = generate(&s).unwrap();
        let mean = g.edge_count() as f64 / s.n_u as f64;
        let expected = expected_uniform_length(s.n_v);
        assert!((mean - expected).abs() / expected < 0.05, "{mean} vs {expected}");
    }

    #[test]
    fn model_names() {
        for name in ["uniform-intervals", "fixed-length", "fixed-length:3", "shared-endpoint-adversarial", "full-intervals"] {
            assert_eq!(name.parse::<Model>().unwrap().to_string(), name);
        }
        assert!("fixed-length:0".parse::<Model>().is_err());
        assert!("zigzag".parse::<Model>().is_err());
    }

    #[test]
    fn validation() {
        let bad = GenSpec { weight_range: Some((2, 1)), ..spec(Model::FullIntervals) };
        assert_eq!(generate(&bad), Err(GenError::EmptyWeightRange(2, 1)));
        let bad = GenSpec { n_v: 0, ..spec(Model::FullIntervals) };
        assert_eq!(generate(&bad), Err(GenError::NoColumns));
    }
}
