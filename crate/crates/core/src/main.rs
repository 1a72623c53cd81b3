use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Parser, Subcommand};

use convex_matching::bench::BenchConfig;
use convex_matching::cli::{self, SolveMode};
use convex_matching::gen::{GenSpec, Model};
use convex_matching::Verdict;

#[derive(Parser)]
#[command(version, about = "Induced matchings and chain covers on convex bipartite graphs")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a maximum induced matching.
    #[command(group(ArgGroup::new("mode").args(["weighted", "unweighted"])))]
    Solve {
        /// Maximum total weight; the input is in weighted format.
        #[arg(long)]
        weighted: bool,
        /// Maximum cardinality (default).
        #[arg(long)]
        unweighted: bool,
        /// Also print the compressed DP row of every non-empty row.
        #[arg(long, conflicts_with = "weighted")]
        colorings: bool,
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a minimum chain cover (self-certified before printing).
    Cover {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a matching and a chain cover as an optimality certificate.
    Certify {
        graph: PathBuf,
        matching: PathBuf,
        cover: PathBuf,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n_u: usize,
        #[arg(long)]
        n_v: usize,
        /// uniform-intervals, fixed-length[:K], shared-endpoint-adversarial, full-intervals
        #[arg(long, default_value = "uniform-intervals")]
        model: Model,
        /// Emit a weighted instance with weights uniform in LO..=HI.
        #[arg(long, value_names = ["LO", "HI"], num_args = 2, allow_negative_numbers = true)]
        weights: Option<Vec<i64>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the solvers on generated instances and print CSV.
    Bench {
        /// Comma-separated sizes n (n_u = n_v = n).
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "uniform-intervals")]
        models: Vec<Model>,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(args: Args) -> Result<ExitCode> {
    match args.command {
        Command::Solve {
            weighted,
            unweighted: _,
            colorings,
            graph,
            out,
        } => {
            let mode = if weighted {
                SolveMode::Weighted
            } else {
                SolveMode::Unweighted { colorings }
            };
            emit(&cli::solve(&read(&graph)?, mode)?, out.as_deref())?;
        }
        Command::Cover { graph, out } => emit(&cli::cover(&read(&graph)?)?, out.as_deref())?,
        Command::Certify {
            graph,
            matching,
            cover,
        } => {
            let verdict = cli::certify(&read(&graph)?, &read(&matching)?, &read(&cover)?)?;
            if let Verdict::Invalid(reason) = verdict {
                eprintln!("{reason}");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Gen {
            n_u,
            n_v,
            model,
            weights,
            seed,
            out,
        } => {
            let spec = GenSpec {
                n_u,
                n_v,
                model,
                weight_range: weights.map(|w| (w[0], w[1])),
                seed,
            };
            emit(&cli::gen(&spec)?, out.as_deref())?;
        }
        Command::Bench {
            sizes,
            models,
            repetitions,
            seed,
            out,
        } => {
            let config = BenchConfig {
                sizes,
                models,
                repetitions,
                seed,
            };
            emit(&cli::bench(&config)?, out.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
