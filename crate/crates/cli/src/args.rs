use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hsdepth::instance::{BranchingRule, CutMode};
use hsdepth::SolverParams;

#[derive(Debug, Parser)]
#[command(
    name = "hsdepth",
    version,
    about = "Exact and heuristic halfspace (Tukey) depth"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depth of one query point.
    Depth {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, value_enum, default_value_t = Algorithm::Bnc)]
        algorithm: Algorithm,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Depth of every point against the others, and the deepest points.
    Median {
        /// Point-set file, `-` for stdin.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Bnc)]
        algorithm: Algorithm,
        #[command(flatten)]
        solve: SolveArgs,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Upper bound from the elastic heuristic.
    Heuristic {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        box_bound: Option<f64>,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Exact depth by combinatorial enumeration (small inputs only).
    Oracle {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Random integer points, uniform in [-range, range].
    GenRandom {
        #[arg(short = 'n', long)]
        points: usize,
        #[arg(short, long)]
        dim: usize,
        #[arg(long, default_value_t = 10)]
        range: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sign gradients of a random two-factor ANOVA fit.
    GenAnova {
        /// Levels of the first factor.
        #[arg(short = 'n', long)]
        rows: usize,
        /// Levels of the second factor.
        #[arg(short = 'm', long)]
        cols: usize,
        #[arg(short = 'r', long, default_value_t = 1)]
        replicates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        mean: f64,
        #[arg(long, default_value_t = 1.0)]
        sd: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Depth of the origin for every instance in a directory, as CSV.
    Bench {
        dir: PathBuf,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "bnc,binsearch"
        )]
        algorithms: Vec<Algorithm>,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Point-set file, `-` for stdin.
    pub input: PathBuf,
    /// Query coordinates, comma separated.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "point_index",
        required_unless_present = "point_index"
    )]
    pub point: Option<String>,
    /// Use input point `i` (0-based) as the query and drop it from the set.
    #[arg(long)]
    pub point_index: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Bnc,
    Binsearch,
    Heuristic,
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bnc => "bnc",
            Algorithm::Binsearch => "binsearch",
            Algorithm::Heuristic => "heuristic",
            Algorithm::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Branching {
    Greedy,
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Cuts {
    Bis,
    BisKnapsack,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub branching: Option<Branching>,
    /// Candidates scored by strong branching.
    #[arg(long)]
    pub strong_candidates: Option<usize>,
    #[arg(long, value_enum)]
    pub cuts: Option<Cuts>,
    #[arg(long)]
    pub cut_rounds: Option<usize>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub box_bound: Option<f64>,
    /// Seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
    #[arg(long)]
    pub node_limit: Option<usize>,
}

impl SolveArgs {
    pub fn heuristic(epsilon: Option<f64>, box_bound: Option<f64>) -> Self {
        Self {
            epsilon,
            box_bound,
            ..Self::default()
        }
    }

    /// Solver parameters for `algo`, rejecting flags it would ignore.
    pub fn params(&self, algo: Algorithm) -> Result<SolverParams, String> {
        let search_flags = [
            ("--branching", self.branching.is_some()),
            ("--strong-candidates", self.strong_candidates.is_some()),
            ("--cuts", self.cuts.is_some()),
            ("--cut-rounds", self.cut_rounds.is_some()),
            ("--time-limit", self.time_limit.is_some()),
            ("--node-limit", self.node_limit.is_some()),
        ];
        let lp_flags = [
            ("--epsilon", self.epsilon.is_some()),
            ("--box-bound", self.box_bound.is_some()),
        ];
        let rejected: &[(&str, bool)] = match algo {
            Algorithm::Bnc | Algorithm::Binsearch => &[],
            Algorithm::Heuristic => &search_flags,
            Algorithm::Oracle => &[search_flags.as_slice(), lp_flags.as_slice()].concat(),
        };
        if let Some((flag, _)) = rejected.iter().find(|(_, set)| *set) {
            return Err(format!(
                "{flag} has no effect with --algorithm {}",
                algo.name()
            ));
        }
        if self.strong_candidates.is_some() && self.branching != Some(Branching::Strong) {
            return Err("--strong-candidates needs --branching strong".into());
        }

        let mut p = SolverParams::default();
        if let Some(b) = self.branching {
            p.branching = match b {
                Branching::Greedy => BranchingRule::Greedy,
                Branching::Strong => BranchingRule::Strong {
                    candidates: self.strong_candidates.unwrap_or(5),
                },
            };
        }
        if let Some(c) = self.cuts {
            p.cuts = match c {
                Cuts::Bis => CutMode::Bis,
                Cuts::BisKnapsack => CutMode::BisKnapsack,
                Cuts::None => CutMode::None,
            };
        }
        if let Some(r) = self.cut_rounds {
            p.cut_rounds = r;
        }
        if let Some(e) = self.epsilon {
            p.epsilon = e;
        }
        if let Some(c) = self.box_bound {
            p.box_bound = c;
        }
        if let Some(t) = self.time_limit {
            p.time_limit =
                Duration::try_from_secs_f64(t).map_err(|_| format!("bad --time-limit {t}"))?;
        }
        if let Some(n) = self.node_limit {
            p.node_limit = n;
        }
        p.validate().map_err(|e| e.to_string())?;
        Ok(p)
    }
}
