use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sos::harness::{
    emit_report, parse_distribution, run_experiment, summary_to_json, verify_bin_timing,
    verify_fill_before_overflow, BinSimConfig, ExperimentConfig, ExperimentMode, OutputFormat,
};
use sos::model::compute_ell;

#[derive(Parser)]
#[command(
    name = "sos",
    version,
    about = "Monte Carlo runner for phase-based online sorting and online TSP"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Online sorting of i.i.d. reals in [0,1].
    Sort1d(Common),
    /// Online TSP in [0,1]^d.
    Tsp {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Balls-into-bins overflow and fill times for one phase.
    VerifyBins {
        #[command(flatten)]
        common: Common,
        /// Bin count; defaults to 2^ℓ for the first --n.
        #[arg(long)]
        bins: Option<usize>,
        /// Capacity per bin; defaults to spreading n/2 cells over the bins.
        #[arg(long)]
        capacity: Option<usize>,
    },
    /// Whether each subarray fills before the next one overflows.
    VerifyFill {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// Ratio sweep over several n, with a fit against log2(n)^2.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
}

#[derive(Args)]
struct Common {
    /// Instance sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "65536")]
    n: Vec<usize>,
    /// Exponent p of log^p n.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long, default_value_t = 100.0)]
    backyard_constant: f64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `uniform` or `cdf:<file>` with two columns (u, Q(u)).
    #[arg(long, default_value = "uniform")]
    dist: String,
    /// Directory for report files; the summary is always printed.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl Common {
    fn experiment(&self, mode: ExperimentMode, d: usize) -> sos::Result<ExperimentConfig> {
        Ok(ExperimentConfig::new(mode, self.n.clone(), d)
            .with_log_exponent(self.p)
            .with_backyard_constant(self.backyard_constant)
            .with_trials(self.trials)
            .with_seed(self.seed)
            .with_distribution(parse_distribution(&self.dist)?))
    }
}

fn write_json(out: Option<&Path>, name: &str, text: &str) -> sos::Result<()> {
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(name), text)?;
    }
    print!("{text}");
    Ok(())
}

fn experiment(common: &Common, mode: ExperimentMode, d: usize) -> sos::Result<()> {
    let report = run_experiment(&common.experiment(mode, d)?)?;
    if let Some(dir) = &common.out {
        let format = match common.format {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        };
        for path in emit_report(&report, dir, format)? {
            eprintln!("wrote {}", path.display());
        }
    }
    print!("{}", summary_to_json(&report.summary)?);
    Ok(())
}

fn run(cli: Cli) -> sos::Result<()> {
    match cli.command {
        Command::Sort1d(common) => experiment(&common, ExperimentMode::Sort1d, 1),
        Command::Tsp { common, d } => experiment(&common, ExperimentMode::Tsp, d),
        Command::Sweep { common, d } => experiment(&common, ExperimentMode::Sweep, d),
        Command::VerifyFill { common, d } => {
            let report =
                verify_fill_before_overflow(&common.experiment(ExperimentMode::VerifyFill, d)?)?;
            write_json(
                common.out.as_deref(),
                "fill.json",
                &(serde_json::to_string_pretty(&report)? + "\n"),
            )
        }
        Command::VerifyBins {
            common,
            bins,
            capacity,
        } => {
            let n = *common.n.first().ok_or(sos::Error::EmptyInput)?;
            let k = match bins {
                Some(k) => k,
                None => 1usize << compute_ell(n, common.p)?,
            };
            let total = capacity.map_or(n / 2, |c| c * k);
            let cfg = BinSimConfig::even(k, total, common.trials, common.seed, (n as f64).log2());
            let report = verify_bin_timing(&cfg)?;
            write_json(
                common.out.as_deref(),
                "bins.json",
                &(serde_json::to_string_pretty(&report)? + "\n"),
            )
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
