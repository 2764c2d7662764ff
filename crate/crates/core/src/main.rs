use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use heaphull::bench::{run_bench, write_report, BenchPlan, ReportFormat, DEFAULT_REPS};
use heaphull::hull::{cycle_mismatch, heaphull_detailed, oracle_hull};
use heaphull::io::{read_points, write_points, PointFormat};
use heaphull::par_reduce::DEFAULT_CHUNK_SIZE;
use heaphull::{generate, Distribution, Error, GenSpec, ReduceConfig, ReduceEngine};

/// Largest input `verify` will run the full-set reference hull on.
const VERIFY_MAX_POINTS: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "heaphull", version, about = "Octagon-filtered 2D convex hull")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a seeded synthetic point set
    Generate(GenerateArgs),
    /// Compute the hull of a point file
    Hull(HullArgs),
    /// Check the filtered hull against the full-set reference hull
    Verify(VerifyArgs),
    /// Time the pipeline and report filter rates
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DistArg {
    Normal,
    Square,
    Disk,
    Circle,
}

impl From<DistArg> for Distribution {
    fn from(d: DistArg) -> Self {
        match d {
            DistArg::Normal => Distribution::Normal,
            DistArg::Square => Distribution::UniformSquare,
            DistArg::Disk => Distribution::UniformDisk,
            DistArg::Circle => Distribution::Circle,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Heaphull,
    Oracle,
}

#[derive(Args, Debug)]
struct PoolArgs {
    /// Worker threads for the reductions (default: available cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Points per reduction chunk
    #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
    chunk: usize,
}

impl PoolArgs {
    fn config(&self) -> Result<ReduceConfig, Error> {
        let workers = self
            .threads
            .unwrap_or_else(|| ReduceConfig::default().workers);
        ReduceConfig::new(self.chunk, workers)
    }
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    dist: DistArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Radial distortion in percent (circle only)
    #[arg(long, default_value_t = 0.0)]
    distort: f64,
    #[arg(long, default_value = "text")]
    format: PointFormat,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct HullArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value = "text")]
    format: PointFormat,
    #[arg(long, value_enum, default_value_t = Algo::Heaphull)]
    algo: Algo,
    #[command(flatten)]
    pool: PoolArgs,
    /// Hull vertices, CCW, as text points
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value = "text")]
    format: PointFormat,
    #[command(flatten)]
    pool: PoolArgs,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum)]
    dist: DistArg,
    /// Comma-separated point counts
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_REPS)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.0)]
    distort: f64,
    #[command(flatten)]
    pool: PoolArgs,
    #[arg(long, default_value = "json")]
    report: ReportFormat,
    /// Report destination (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("hull mismatch: {0}")]
    Mismatch(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Hull(a) => cmd_hull(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_generate(a: GenerateArgs) -> Result<(), CliError> {
    let spec = GenSpec {
        distribution: a.dist.into(),
        n: a.n,
        seed: a.seed,
        distort_pct: a.distort,
    };
    let points = generate(&spec)?;
    write_points(&points, &a.out, a.format)?;
    Ok(())
}

fn cmd_hull(a: HullArgs) -> Result<(), CliError> {
    let points = read_points(&a.input, a.format)?;
    let (hull, rate) = match a.algo {
        Algo::Heaphull => {
            let engine = ReduceEngine::new(a.pool.config()?)?;
            let run = heaphull_detailed(&points, &engine);
            let rate = run.filter.filter_rate();
            (run.hull, rate)
        }
        Algo::Oracle => (oracle_hull(&points), 0.0),
    };
    if let Some(out) = &a.out {
        write_points(hull.vertices(), out, PointFormat::Text)?;
    }
    println!("h={} filter_rate={}", hull.h(), rate);
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let points = read_points(&a.input, a.format)?;
    if points.n() > VERIFY_MAX_POINTS {
        return Err(CliError::Usage(format!(
            "verify accepts at most {VERIFY_MAX_POINTS} points, got {}",
            points.n()
        )));
    }
    let engine = ReduceEngine::new(a.pool.config()?)?;
    let hull = heaphull_detailed(&points, &engine).hull;
    let reference = oracle_hull(&points);
    if let Some(m) = cycle_mismatch(hull.vertices(), reference.vertices()) {
        let fmt = |p: Option<heaphull::Point2D>| match p {
            Some(p) => format!("({} {})", p.x, p.y),
            None => "none".to_string(),
        };
        return Err(CliError::Mismatch(format!(
            "vertex {}: heaphull {} vs oracle {} (h={} vs {})",
            m.position,
            fmt(m.actual),
            fmt(m.expected),
            hull.h(),
            reference.h()
        )));
    }
    println!("OK h={}", hull.h());
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> Result<(), CliError> {
    let plan = BenchPlan {
        distribution: a.dist.into(),
        sizes: a.n_list,
        reps: a.reps,
        seed: a.seed,
        distort_pct: a.distort,
        reduce: a.pool.config()?,
    };
    let rows = run_bench(&plan)?;
    match &a.out {
        Some(path) => {
            let file = File::create(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            write_report(&rows, a.report, BufWriter::new(file))?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_report(&rows, a.report, &mut lock)?;
            lock.flush().ok();
        }
    }
    Ok(())
}
