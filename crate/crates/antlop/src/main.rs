//! Command line front end: single-instance solves, batch benchmarks,
//! instance generation and the exhaustive oracle.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use antlop::harness::{
    benchmark_instance, brute_force_optimal, load_bench_config, run_benchmark, write_csv,
    BenchmarkReport,
};
use antlop::io::{generate_random_instance, load_instance, write_instance};
use antlop::{Algorithm, ColonyParams, LopError, Result};

#[derive(Parser)]
#[command(
    name = "antlop",
    version,
    about = "Ant colony solvers and a benchmark harness for the linear ordering problem"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one instance and write per-run CSV
    Solve {
        /// Instance file to solve
        #[arg(long)]
        instance: PathBuf,
        /// Algorithm: acs-im or sb-sam
        #[arg(long)]
        algo: Algorithm,
        /// Colony iterations per run
        #[arg(long, default_value_t = 200)]
        iterations: usize,
        /// Ants per iteration
        #[arg(long, default_value_t = 10)]
        ants: usize,
        /// Independent replicates; run k uses seed + k
        #[arg(long, default_value_t = 5)]
        runs: usize,
        /// Seed of the first replicate
        #[arg(long)]
        seed: u64,
        /// Known optimum, enables the deviation column
        #[arg(long)]
        optimum: Option<f64>,
        /// CSV output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a batch benchmark described by a TOML config
    Bench {
        /// Config file; relative paths inside it resolve against its directory
        #[arg(long)]
        config: PathBuf,
    },
    /// Write a random instance with uniform integer weights
    Gen {
        /// Number of objects
        #[arg(long)]
        n: usize,
        /// Smallest weight, inclusive
        #[arg(long, default_value_t = 0)]
        low: i64,
        /// Largest weight, inclusive
        #[arg(long, default_value_t = 99)]
        high: i64,
        /// Generator seed
        #[arg(long)]
        seed: u64,
        /// Output path
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustively compute the optimum of a small instance (n <= 10)
    Oracle {
        /// Instance file to evaluate
        #[arg(long)]
        instance: PathBuf,
    },
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = dispatch(cli.command) {
        if let LopError::Io(io_err) = &err {
            if io_err.kind() == std::io::ErrorKind::BrokenPipe {
                // The downstream reader went away; stop quietly.
                std::process::exit(0);
            }
        }
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}

/// 1 for usage problems, 2 for unreadable or malformed files.
fn exit_code(err: &LopError) -> i32 {
    match err {
        LopError::Io(_)
        | LopError::Parse { .. }
        | LopError::Truncated { .. }
        | LopError::InvalidHeader(_)
        | LopError::Config(_) => 2,
        LopError::InvalidArgument(_) | LopError::SizeLimit { .. } | LopError::NoCandidates => 1,
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Solve {
            instance,
            algo,
            iterations,
            ants,
            runs,
            seed,
            optimum,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let mut params = ColonyParams::new(algo);
            params.m = ants;
            let row = benchmark_instance(&inst, algo, &params, runs, iterations, seed, optimum)?;
            let best = row
                .records
                .iter()
                .map(|r| r.best_value)
                .fold(f64::NEG_INFINITY, f64::max);
            let dev = row
                .mean_deviation
                .map(|d| format!(", mean deviation {d:.6}"))
                .unwrap_or_default();
            eprintln!(
                "{} {}: best {} over {} runs, mean time {:.2}s{}",
                row.instance, row.algorithm, best, runs, row.mean_seconds, dev
            );
            let report = BenchmarkReport {
                rows: vec![row],
                errors: Vec::new(),
            };
            emit_csv(&report, out.as_deref())
        }
        Command::Bench { config } => {
            let (config, out) = load_bench_config(&config)?;
            let report = run_benchmark(&config)?;
            if report.rows.is_empty() && !report.errors.is_empty() {
                return Err(LopError::Io(std::io::Error::other(
                    "every instance failed to load",
                )));
            }
            for &algorithm in &config.algorithms {
                let agg = report.aggregate(algorithm);
                for row in &agg.rows {
                    eprintln!(
                        "{algorithm} size {}: {:.3}% mean deviation over {} instances",
                        row.size, row.mean_percent, row.count
                    );
                }
                if let Some(overall) = agg.overall_percent {
                    eprintln!("{algorithm} overall: {overall:.3}%");
                }
            }
            emit_csv(&report, out.as_deref())
        }
        Command::Gen {
            n,
            low,
            high,
            seed,
            out,
        } => {
            let inst = generate_random_instance(n, low, high, seed)?;
            std::fs::write(&out, write_instance(&inst))?;
            eprintln!("wrote {n}x{n} instance to {}", out.display());
            Ok(())
        }
        Command::Oracle { instance } => {
            let inst = load_instance(&instance)?;
            let (value, perm) = brute_force_optimal(&inst)?;
            let ordering = perm
                .to_one_based()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            writeln!(out, "optimum {value}")?;
            writeln!(out, "ordering {ordering}")?;
            Ok(())
        }
    }
}

fn emit_csv(report: &BenchmarkReport, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            let mut writer = std::io::BufWriter::new(file);
            write_csv(report, &mut writer)?;
            writer.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_csv(report, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}
