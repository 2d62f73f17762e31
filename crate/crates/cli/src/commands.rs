use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use hsdepth::anova::{gen_random_anova, sign_gradients};
use hsdepth::io::{format_point_set, parse_point, parse_point_set};
use hsdepth::random::random_point_set;
use hsdepth::{
    binary_search_depth, heuristic_depth, oracle_depth, solve_depth, DepthError, DepthInstance,
    DepthResult, PointSet, SearchStats, SolverParams, Status,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Algorithm, Cli, Command, Output, QueryArgs, SolveArgs};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl From<DepthError> for CliError {
    fn from(e: DepthError) -> Self {
        match e {
            DepthError::Lp(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// JSON form of one depth computation.
#[derive(Debug, Serialize)]
struct DepthReport {
    depth: usize,
    cover: Vec<usize>,
    direction: Vec<f64>,
    status: &'static str,
    nodes: usize,
    cuts: usize,
    time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon_star: Option<f64>,
}

impl DepthReport {
    /// `ids` maps instance point indices back to input indices.
    fn new(r: &DepthResult, ids: Option<&[usize]>) -> Self {
        let cover = match ids {
            Some(ids) => r.cover.iter().map(|&i| ids[i]).collect(),
            None => r.cover.clone(),
        };
        Self {
            depth: r.depth,
            cover,
            direction: r.direction.clone(),
            status: r.status.as_str(),
            nodes: r.stats.nodes,
            cuts: r.stats.cuts,
            time_ms: r.stats.time_ms,
            epsilon_star: r.epsilon_star,
        }
    }

    fn print_text(&self) {
        println!("depth {} ({})", self.depth, self.status);
        println!("cover {}", join(&self.cover));
        if !self.direction.is_empty() {
            println!("direction {}", join(&self.direction));
        }
        if let Some(e) = self.epsilon_star {
            println!("epsilon* {e:e}");
        }
        println!(
            "nodes {} cuts {} time {:.1} ms",
            self.nodes, self.cuts, self.time_ms
        );
    }
}

#[derive(Debug, Serialize)]
struct MedianReport {
    /// Depth of each input point against the rest.
    depths: Vec<usize>,
    /// Indices attaining the largest depth.
    median: Vec<usize>,
    depth: usize,
    status: &'static str,
    time_ms: f64,
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Depth {
            query,
            algorithm,
            solve,
            output,
        } => cmd_depth(&query, algorithm, &solve, output),
        Command::Heuristic {
            query,
            epsilon,
            box_bound,
            output,
        } => cmd_depth(
            &query,
            Algorithm::Heuristic,
            &SolveArgs::heuristic(epsilon, box_bound),
            output,
        ),
        Command::Oracle { query, output } => {
            cmd_depth(&query, Algorithm::Oracle, &SolveArgs::default(), output)
        }
        Command::Median {
            input,
            algorithm,
            solve,
            threads,
            output,
        } => cmd_median(&input, algorithm, &solve, threads, output),
        Command::GenRandom {
            points,
            dim,
            range,
            seed,
            out,
        } => {
            let s = random_point_set(points, dim, range, seed)?;
            emit(&format_point_set(&s), out.as_deref())
        }
        Command::GenAnova {
            rows,
            cols,
            replicates,
            seed,
            mean,
            sd,
            out,
        } => {
            let spec = gen_random_anova(rows, cols, replicates, seed, mean, sd)?;
            emit(&format_point_set(&sign_gradients(&spec)), out.as_deref())
        }
        Command::Bench {
            dir,
            algorithms,
            solve,
            out,
        } => cmd_bench(&dir, &algorithms, &solve, out.as_deref()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<ExitCode> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn read_input(path: &Path) -> CliResult<PointSet> {
    let text = if path == Path::new("-") {
        io::read_to_string(io::stdin())?
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    parse_point_set(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Depth of `p` among `points` by one algorithm. The oracle works on the
/// raw differences, so integer input stays on its exact path, and reports
/// no cover or direction.
fn solve(
    points: &[Vec<f64>],
    p: &[f64],
    algo: Algorithm,
    params: &SolverParams,
) -> CliResult<DepthResult> {
    let inst = DepthInstance::from_points(p.len(), points, p, true)?;
    let r = match algo {
        Algorithm::Bnc => solve_depth(&inst, params)?,
        Algorithm::Binsearch => binary_search_depth(&inst, params)?,
        Algorithm::Heuristic => heuristic_depth(&inst, params)?,
        Algorithm::Oracle => {
            let start = Instant::now();
            let rows: Vec<Vec<f64>> = points
                .iter()
                .map(|q| q.iter().zip(p).map(|(a, b)| a - b).collect())
                .collect();
            DepthResult {
                depth: oracle_depth(&rows, p.len()),
                cover: Vec::new(),
                cover_rows: Vec::new(),
                direction: Vec::new(),
                status: Status::Proven,
                epsilon: params.epsilon,
                epsilon_star: None,
                stats: SearchStats {
                    time_ms: start.elapsed().as_secs_f64() * 1e3,
                    ..SearchStats::default()
                },
            }
        }
    };
    Ok(r)
}

fn exit_for(status: Status) -> ExitCode {
    if status.hit_limit() {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_depth(
    query: &QueryArgs,
    algo: Algorithm,
    solve_args: &SolveArgs,
    output: Output,
) -> CliResult<ExitCode> {
    let params = solve_args.params(algo).map_err(CliError::Input)?;
    let s = read_input(&query.input)?;
    let (points, ids, p) = match (&query.point, query.point_index) {
        (Some(text), _) => (s.points().to_vec(), None, parse_point(text)?),
        (None, Some(i)) => {
            let (rest, ids, p) = s.split_query(i)?;
            (rest, Some(ids), p)
        }
        (None, None) => return Err(CliError::Input("give --point or --point-index".into())),
    };
    if p.len() != s.dim() {
        return Err(CliError::Input(format!(
            "query has {} coordinates, points have {}",
            p.len(),
            s.dim()
        )));
    }
    let r = solve(&points, &p, algo, &params)?;
    let report = DepthReport::new(&r, ids.as_deref());
    match output {
        Output::Json => println!("{}", to_json(&report)?),
        Output::Text => report.print_text(),
    }
    Ok(exit_for(r.status))
}

fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    serde_json::to_string(v).map_err(|e| CliError::Internal(e.to_string()))
}

fn median_depths(
    s: &PointSet,
    algo: Algorithm,
    params: &SolverParams,
) -> CliResult<Vec<DepthResult>> {
    (0..s.len())
        .into_par_iter()
        .map(|i| {
            let (rest, _, p) = s.split_query(i)?;
            solve(&rest, &p, algo, params)
        })
        .collect()
}

fn cmd_median(
    input: &Path,
    algo: Algorithm,
    solve_args: &SolveArgs,
    threads: Option<usize>,
    output: Output,
) -> CliResult<ExitCode> {
    let params = solve_args.params(algo).map_err(CliError::Input)?;
    let s = read_input(input)?;
    let start = Instant::now();
    let results = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Input(e.to_string()))?
            .install(|| median_depths(&s, algo, &params))?,
        None => median_depths(&s, algo, &params)?,
    };
    let depths: Vec<usize> = results.iter().map(|r| r.depth).collect();
    let best = depths.iter().copied().max().unwrap_or(0);
    let median: Vec<usize> = (0..depths.len()).filter(|&i| depths[i] == best).collect();
    let status = results
        .iter()
        .map(|r| r.status)
        .find(|s| s.hit_limit())
        .or_else(|| results.first().map(|r| r.status))
        .unwrap_or(Status::Proven);
    let report = MedianReport {
        depths,
        median,
        depth: best,
        status: status.as_str(),
        time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    match output {
        Output::Json => println!("{}", to_json(&report)?),
        Output::Text => {
            for (i, d) in report.depths.iter().enumerate() {
                println!("{i} {d}");
            }
            println!(
                "median {} (depth {}, {})",
                join(&report.median),
                report.depth,
                report.status
            );
        }
    }
    Ok(exit_for(status))
}

#[derive(Debug, Serialize)]
struct BenchRow<'a> {
    instance: &'a str,
    algorithm: &'static str,
    status: &'a str,
    depth: Option<usize>,
    nodes: Option<usize>,
    cuts: Option<usize>,
    time_ms: Option<f64>,
}

fn instance_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in
        fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?
    {
        let path = entry?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Depth of the origin per instance and algorithm. Failures become rows
/// with status `Error` and empty numeric fields.
fn cmd_bench(
    dir: &Path,
    algos: &[Algorithm],
    solve_args: &SolveArgs,
    out: Option<&Path>,
) -> CliResult<ExitCode> {
    let params: Vec<SolverParams> = algos
        .iter()
        .map(|&a| solve_args.params(a).map_err(CliError::Input))
        .collect::<CliResult<_>>()?;
    let files = instance_files(dir)?;
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(io::stdout()),
    };
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink);
    let csv_err = |e: csv::Error| CliError::Internal(e.to_string());
    w.write_record([
        "instance",
        "algorithm",
        "status",
        "depth",
        "nodes",
        "cuts",
        "time_ms",
    ])
    .map_err(csv_err)?;
    for file in &files {
        let name = file
            .file_name()
            .map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        let input = read_input(file);
        for (&algo, params) in algos.iter().zip(&params) {
            let result = input
                .as_ref()
                .map_err(|_| ())
                .and_then(|s| solve(s.points(), &vec![0.0; s.dim()], algo, params).map_err(|_| ()));
            let row = match &result {
                Ok(r) => BenchRow {
                    instance: &name,
                    algorithm: algo.name(),
                    status: r.status.as_str(),
                    depth: Some(r.depth),
                    nodes: Some(r.stats.nodes),
                    cuts: Some(r.stats.cuts),
                    time_ms: Some(r.stats.time_ms),
                },
                Err(()) => BenchRow {
                    instance: &name,
                    algorithm: algo.name(),
                    status: "Error",
                    depth: None,
                    nodes: None,
                    cuts: None,
                    time_ms: None,
                },
            };
            w.serialize(row).map_err(csv_err)?;
        }
        w.flush()?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}
