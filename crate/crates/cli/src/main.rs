//! Experiment runner: binds systems, potentials, estimators, and oracles
//! into reproducible runs driven by a JSON config. Every run writes tidy CSV
//! tables plus a manifest that echoes all resolved parameters; a manifest is
//! itself a valid config, so any run can be repeated from its own record.

mod config;
mod run;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use gibbstate::Error;

#[derive(Debug)]
pub enum AppError {
    Config(String),
    Lib(Error),
    Io(std::io::Error),
}

impl AppError {
    /// Library errors raised while interpreting the config are config
    /// problems, whatever their library type.
    pub fn config_stage(e: Error) -> AppError {
        AppError::Config(e.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self {
            AppError::Config(_) => 2,
            AppError::Lib(Error::ResourceCap { .. }) => 3,
            AppError::Lib(Error::EpsilonTooLarge(_)) => 4,
            _ => 1,
        }
    }
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Config(m) => write!(f, "config: {m}"),
            AppError::Lib(e) => write!(f, "{e}"),
            AppError::Io(e) => write!(f, "io: {e}"),
        }
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        AppError::Lib(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

#[derive(Parser)]
#[command(
    name = "gibbstate",
    version,
    about = "equilibrium-state approximation experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON config, or a manifest.json from a previous run
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for CSV tables and the manifest
    #[arg(long, global = true, default_value = "runs")]
    out: PathBuf,
    /// Overrides the seed in the config
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run past the leaf-count resource cap
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Subcommand)]
pub enum Command {
    /// Enumerate the preimage sets f⁻¹(x) … f⁻ⁿ(x)
    Preimages,
    /// Count fixed points of fⁿ
    Fixpoints,
    /// Pressure estimates from periodic points
    Pressure,
    /// Weighted preimage-tree measure μₙ at a point
    MuN,
    /// Gibbs-weighted measure on Fix(fⁿ)
    PeriodicMeasure,
    /// Mean pairing error of μₙ over sampled starting points
    L1Stat,
    /// Weak-star distance to the oracle from one point, per depth
    Pointwise,
    /// Compare both routes to a lifted cylinder's measure
    Lemma1Check,
    /// Range of μ[w]·e^{nP−Sₙφ} over periodic cylinders
    GibbsRatio,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Preimages => "preimages",
            Command::Fixpoints => "fixpoints",
            Command::Pressure => "pressure",
            Command::MuN => "mu-n",
            Command::PeriodicMeasure => "periodic-measure",
            Command::L1Stat => "l1-stat",
            Command::Pointwise => "pointwise",
            Command::Lemma1Check => "lemma1-check",
            Command::GibbsRatio => "gibbs-ratio",
        }
    }
}

#[derive(Serialize)]
struct Manifest {
    command: String,
    force: bool,
    config: config::Config,
    versions: BTreeMap<String, String>,
    wall_ms: u128,
    results: serde_json::Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn real_main(cli: Cli) -> Result<(), AppError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| AppError::Config("--config is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg = config::parse_config(&text)?;
    if let Some(s) = cli.seed {
        cfg.seed = Some(s);
    }
    std::fs::create_dir_all(&cli.out)?;

    let start = Instant::now();
    let results = match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| AppError::Config(format!("thread pool: {e}")))?
            .install(|| run::dispatch(cli.command, &mut cfg, &cli.out, cli.force)),
        None => run::dispatch(cli.command, &mut cfg, &cli.out, cli.force),
    }?;

    let manifest = Manifest {
        command: cli.command.name().to_string(),
        force: cli.force,
        config: cfg,
        versions: BTreeMap::from([(
            "gibbstate".to_string(),
            env!("CARGO_PKG_VERSION").to_string(),
        )]),
        wall_ms: start.elapsed().as_millis(),
        results,
    };
    let body = serde_json::to_string_pretty(&manifest)
        .map_err(|e| AppError::Config(format!("manifest serialization: {e}")))?;
    std::fs::write(cli.out.join("manifest.json"), body + "\n")?;
    Ok(())
}
