mod commands;
mod error;
mod ingest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eix_core::{EstimatorVariant, ModelKind, ModelSpec, SweepConfig};

use crate::commands::StudyKind;
use crate::error::{CliError, Result};

#[derive(Parser)]
#[command(name = "eix", version, about = "Extremal index estimation for stationary time series")]
struct Cli {
    /// Worker threads for Monte Carlo commands (or set EIX_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the extremal index of one series at a fixed block length.
    Estimate(EstimateArgs),
    /// Estimate over a block-length range, emitting plot-ready CSV.
    Sweep(SweepArgs),
    /// Simulate a model series, one value per line.
    Simulate(SimulateArgs),
    /// Monte Carlo studies on simulated series.
    Mc(McArgs),
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    ingest: ingest::IngestArgs,

    /// Block length.
    #[arg(long, short = 'b')]
    block_length: usize,

    /// Estimator variant: (b|n)-(dj|sl), optionally with a -lbo suffix.
    #[arg(long, default_value = "b-sl")]
    estimator: EstimatorVariant,

    /// Confidence level.
    #[arg(long, default_value_t = 0.95)]
    level: f64,

    /// Center the interval on the uncorrected estimate.
    #[arg(long)]
    no_bias_correct: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    ingest: ingest::IngestArgs,

    /// Inclusive block-length range, e.g. 16..256.
    #[arg(long)]
    blocks: BlockRange,

    /// Estimator variant: (b|n)-(dj|sl), optionally with a -lbo suffix.
    #[arg(long, default_value = "b-sl")]
    estimator: EstimatorVariant,

    /// Confidence level.
    #[arg(long, default_value_t = 0.95)]
    level: f64,

    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,

    /// Series length.
    #[arg(short = 'n', long)]
    n: usize,

    /// RNG seed; runs with equal flags are byte-identical.
    #[arg(long)]
    seed: u64,

    /// Override the model's default burn-in.
    #[arg(long)]
    burn_in: Option<usize>,

    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct McArgs {
    #[command(subcommand)]
    study: McStudy,
}

#[derive(Subcommand)]
enum McStudy {
    /// MSE sweep over block sizes.
    Sweep(McCommon),
    /// Confidence interval coverage study.
    Coverage(McCommon),
    /// Variance-estimator quality ratios against an independent bank.
    Ratio(McCommon),
}

#[derive(Args)]
struct McCommon {
    #[command(flatten)]
    model: ModelArgs,

    /// Series length per replication.
    #[arg(long, default_value_t = 8192)]
    n: usize,

    /// Comma-separated block lengths.
    #[arg(long, value_delimiter = ',', default_value = "4,8,16,32,64,128,256,512")]
    blocks: Vec<usize>,

    /// Replications.
    #[arg(long, default_value_t = 2000)]
    reps: usize,

    /// Master seed; replication r draws substream mix64(master, r).
    #[arg(long)]
    master_seed: u64,

    /// Comma-separated estimator variants.
    #[arg(long, value_delimiter = ',', default_value = "b-dj,b-sl,n-dj,n-sl")]
    estimators: Vec<EstimatorVariant>,

    /// Aggregate uncorrected point estimates.
    #[arg(long)]
    no_bias_correct: bool,

    /// Confidence level for coverage.
    #[arg(long, default_value_t = 0.95)]
    level: f64,

    /// Writes <prefix>.csv and <prefix>.json.
    #[arg(long)]
    out_prefix: PathBuf,
}

#[derive(Args)]
struct ModelArgs {
    /// Model family.
    #[arg(long, value_enum)]
    model: ModelName,

    /// ARMAX dependence parameter (theta = 1 - alpha).
    #[arg(long)]
    alpha: Option<f64>,

    /// ARCH / squared-ARCH coefficient.
    #[arg(long)]
    lambda: Option<f64>,

    /// Clayton copula parameter.
    #[arg(long)]
    vartheta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelName {
    Armax,
    SqArch,
    Arch,
    Clayton,
}

impl ModelArgs {
    fn kind(&self) -> Result<ModelKind> {
        let reject = |flag: &str, v: Option<f64>| -> Result<()> {
            match v {
                Some(_) => Err(CliError::data(format!("--{flag} does not apply to this model"))),
                None => Ok(()),
            }
        };
        let need = |flag: &str, v: Option<f64>| -> Result<f64> {
            v.ok_or_else(|| CliError::data(format!("this model needs --{flag}")))
        };
        match self.model {
            ModelName::Armax => {
                reject("lambda", self.lambda)?;
                reject("vartheta", self.vartheta)?;
                Ok(ModelKind::Armax { alpha: need("alpha", self.alpha)? })
            }
            ModelName::SqArch => {
                reject("alpha", self.alpha)?;
                reject("vartheta", self.vartheta)?;
                Ok(ModelKind::SqArch { lambda: need("lambda", self.lambda)? })
            }
            ModelName::Arch => {
                reject("alpha", self.alpha)?;
                reject("vartheta", self.vartheta)?;
                Ok(ModelKind::Arch { lambda: need("lambda", self.lambda)? })
            }
            ModelName::Clayton => {
                reject("alpha", self.alpha)?;
                reject("lambda", self.lambda)?;
                Ok(ModelKind::Clayton { vartheta: need("vartheta", self.vartheta)? })
            }
        }
    }
}

/// Inclusive block-length range "A..B" (also accepts "A..=B").
#[derive(Debug, Clone, Copy)]
struct BlockRange {
    lo: usize,
    hi: usize,
}

impl FromStr for BlockRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: usize = lo.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
        let hi: usize = hi.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(BlockRange { lo, hi })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let threads = thread_override(cli.threads)?;
    with_threads(threads, || match cli.command {
        Command::Estimate(args) => cmd_estimate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Mc(args) => cmd_mc(args),
    })?
}

fn thread_override(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("EIX_THREADS") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::data(format!("EIX_THREADS={s:?} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        Some(0) => Err(CliError::data("thread count must be at least 1")),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::data(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

fn cmd_estimate(args: EstimateArgs) -> Result<()> {
    let series = ingest::read_series(&args.ingest)?;
    let out = commands::estimate_output(
        &series,
        args.block_length,
        args.estimator,
        args.level,
        !args.no_bias_correct,
    )?;
    let json = serde_json::to_string_pretty(&out)
        .map_err(|e| CliError::data(format!("serialization: {e}")))?;
    println!("{json}");
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let series = ingest::read_series(&args.ingest)?;
    let (csv, skipped, warnings) =
        commands::sweep_csv(&series, args.blocks.lo, args.blocks.hi, args.estimator, args.level)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    if skipped > 0 {
        eprintln!(
            "warning: skipped {skipped} block lengths outside [2, {}]",
            series.len() / 2
        );
    }
    write_output(args.out.as_deref(), &csv)
}

fn cmd_simulate(args: SimulateArgs) -> Result<()> {
    let kind = args.model.kind()?;
    let mut spec = ModelSpec::new(kind, args.n, args.seed)?;
    if let Some(burn_in) = args.burn_in {
        spec = spec.with_burn_in(burn_in);
    }
    let text = commands::simulate_lines(&spec)?;
    write_output(args.out.as_deref(), &text)
}

fn cmd_mc(args: McArgs) -> Result<()> {
    let (study, common) = match args.study {
        McStudy::Sweep(c) => (StudyKind::Sweep, c),
        McStudy::Coverage(c) => (StudyKind::Coverage, c),
        McStudy::Ratio(c) => (StudyKind::Ratio, c),
    };
    let mut config = SweepConfig::new(common.model.kind()?, common.reps, common.master_seed);
    config.n = common.n;
    config.blocks = common.blocks.clone();
    config.estimators = common.estimators.clone();
    config.bias_correct = !common.no_bias_correct;
    config.level = common.level;

    let report = commands::mc_run(study, &config)?;

    let csv_path = PathBuf::from(format!("{}.csv", common.out_prefix.display()));
    let json_path = PathBuf::from(format!("{}.json", common.out_prefix.display()));
    std::fs::write(&csv_path, report.to_csv_string()?)?;
    std::fs::write(&json_path, report.to_json_string())?;
    print!("{}", commands::argmin_lines(&report));
    Ok(())
}

fn write_output(path: Option<&std::path::Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
