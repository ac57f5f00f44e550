use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use apcd::Kernel;
use apcd_bench::output::{write_results, write_stats};
use apcd_bench::pipeline::{cmd_detect, cmd_grscore, cmd_npso, cmd_perturb, cmd_stats};
use apcd_bench::{load_config, BenchError, BenchResult, MethodSelector, Overrides, PerturbMode};
use clap::{Args, Parser, Subcommand};

/// Affinity propagation community detection benchmarks.
///
/// Each subcommand writes `<out>/<subcommand>.csv`. Exit codes: 0 success,
/// 2 I/O error, 3 data error, 4 degenerate algorithm run.
#[derive(Debug, Parser)]
#[command(name = "apcd-bench", version)]
struct Cli {
    #[command(flatten)]
    shared: Shared,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Shared {
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Comma-separated kernels (SP, ESP, CN, J, RA, EBC).
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_kernel)]
    kernels: Option<Vec<Kernel>>,
    /// Comma-separated methods: AP, Louvain or explicit names like LGI-AP-RA.
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_method)]
    methods: Option<Vec<MethodSelector>>,
    /// Repetitions for perturbation and generator runs.
    #[arg(long, global = true)]
    reps: Option<usize>,
    /// Fraction of links to remove or add.
    #[arg(long, global = true)]
    fraction: Option<f64>,
    /// Full-scale defaults (100 repetitions, N up to 1000).
    #[arg(long, global = true)]
    full: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size, clustering, power-law exponent and half average degree.
    Stats,
    /// Greedy-routing score per dataset and kernel.
    Grscore,
    /// Community detection scored against the ground truth.
    Detect,
    /// Detection on randomly perturbed copies of each dataset.
    Perturb {
        /// remove or add
        #[arg(long, value_parser = parse_mode)]
        mode: Option<PerturbMode>,
    },
    /// Synthetic nPSO networks: generation and detection.
    Npso,
}

fn parse_kernel(s: &str) -> Result<Kernel, String> {
    s.parse().map_err(|e: apcd::Error| e.to_string())
}

fn parse_method(s: &str) -> Result<MethodSelector, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<PerturbMode, String> {
    s.parse()
}

fn run(cli: Cli) -> BenchResult<PathBuf> {
    let s = cli.shared;
    let mut overrides = Overrides {
        seed: s.seed,
        output_dir: s.out,
        kernels: s.kernels,
        methods: s.methods,
        repetitions: s.reps,
        fraction: s.fraction,
        perturbation: None,
        full: s.full,
    };
    if let Command::Perturb { mode } = &cli.command {
        overrides.perturbation = Some(mode.unwrap_or(PerturbMode::Remove));
    }
    let cfg = load_config(s.config.as_deref(), &overrides)?;
    fs::create_dir_all(&cfg.output_dir).map_err(|e| BenchError::io(&cfg.output_dir, e))?;

    let (name, rows, stats) = match cli.command {
        Command::Stats => ("stats", None, Some(cmd_stats(&cfg)?)),
        Command::Grscore => ("grscore", Some(cmd_grscore(&cfg)?), None),
        Command::Detect => ("detect", Some(cmd_detect(&cfg)?), None),
        Command::Perturb { .. } => ("perturb", Some(cmd_perturb(&cfg)?), None),
        Command::Npso => ("npso", Some(cmd_npso(&cfg)?), None),
    };
    let path = cfg.output_dir.join(format!("{name}.csv"));
    let file = File::create(&path).map(BufWriter::new).map_err(|e| BenchError::io(&path, e))?;
    if let Some(rows) = rows {
        write_results(&rows, file)?;
    } else if let Some(stats) = stats {
        write_stats(&stats, file)?;
    }
    Ok(path)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(path) => {
            eprintln!("wrote {}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
