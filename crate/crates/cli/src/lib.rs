//! Command-line driver: one binary, one configuration and seed surface,
//! deterministic reports.

pub mod builtin;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::Config;
use crate::error::CliError;
use crate::output::{render_report, write_outputs, CommandOutput};

#[derive(Debug, Parser)]
#[command(name = "foliation", version, about = "Exact and numerical diagnostics for rigid Lie foliations")]
pub struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, env = "FOLIATION_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, env = "FOLIATION_SEED")]
    pub seed: Option<u64>,
    /// Worker threads; reports do not depend on this.
    #[arg(long, global = true, env = "FOLIATION_WORKERS")]
    pub workers: Option<usize>,
    /// Output directory for report.json, manifest.json and tables.
    #[arg(long, global = true, env = "FOLIATION_OUT", default_value = "foliation-out")]
    pub out: PathBuf,
    /// Directory for cached word balls.
    #[arg(long, global = true, env = "FOLIATION_CACHE")]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural invariants and rigidity obstructions of a Lie algebra.
    Algebra(AlgebraArgs),
    /// Integral orthogonal group of a quadratic form: embeddings, generators,
    /// density and spectral diagnostics.
    Forge(ForgeArgs),
    /// First group cohomology of a finitely presented group.
    Cohomology(CohomologyArgs),
    /// Density and spectral diagnostics for given elements of SO(n).
    Dynamics(DynamicsArgs),
    /// Finite suspension models and connection-form residuals.
    Suspension(SuspensionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuiltinAlgebra {
    So3,
    So4,
    So5,
    Heisenberg,
}

#[derive(Debug, Clone, Args, Default)]
pub struct AlgebraArgs {
    /// Structure-constant file.
    pub input: Option<PathBuf>,
    #[arg(long, conflicts_with = "input")]
    pub builtin: Option<BuiltinAlgebra>,
    /// File `{"basis": [[...], ...]}` spanning an ideal to reduce by.
    #[arg(long)]
    pub ideal: Option<PathBuf>,
    /// Cohomology degrees to compute.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuiltinForm {
    /// x1^2 + x2^2 + x3^2 - sqrt2 x4^2 - sqrt2 x5^2
    WorkedExample,
    /// x1^2 + ... + x5^2
    Definite,
    /// x1^2 - x2^2 + x3^2 - sqrt2 x4^2 - sqrt2 x5^2
    Isotropic,
}

#[derive(Debug, Clone, Args, Default)]
pub struct ForgeArgs {
    /// Quadratic form file; defaults to the bundled worked example.
    pub form: Option<PathBuf>,
    #[arg(long, conflicts_with = "form")]
    pub builtin: Option<BuiltinForm>,
    #[arg(long)]
    pub height: Option<u32>,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long)]
    pub probes: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Args, Default)]
pub struct CohomologyArgs {
    /// Presentation file.
    pub presentation: Option<PathBuf>,
    /// Representation file.
    #[arg(long, conflicts_with = "embedding")]
    pub rep: Option<PathBuf>,
    /// Images of the generators in SO(n), as written by `forge`.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    /// Harmonic degrees for `--embedding`.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub degrees: Vec<usize>,
    /// Run every presentation and representation of the bundled corpus.
    #[arg(long, conflicts_with_all = ["presentation", "rep", "embedding"])]
    pub corpus: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DynamicsArgs {
    /// Images file `{"names": [...], "matrices": [...]}`.
    pub images: PathBuf,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long)]
    pub probes: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Args)]
pub struct SuspensionArgs {
    #[command(subcommand)]
    pub command: SuspensionCommand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartKindArg {
    Exponential,
    Torus,
}

#[derive(Debug, Clone, Subcommand)]
pub enum SuspensionCommand {
    /// Orbits and stabilizer indices of a permutation action.
    Orbits {
        /// Action file; defaults to the bundled example.
        input: Option<PathBuf>,
    },
    /// Maurer-Cartan and translation-invariance residuals on a chart of SO(n).
    Chart {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ChartKindArg::Exponential)]
        kind: ChartKindArg,
    },
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunContext {
    pub config: Config,
    pub cache_dir: Option<PathBuf>,
}

impl RunContext {
    pub fn new(config: Config) -> Self {
        RunContext { config, cache_dir: None }
    }
}

/// Configuration from defaults, file, `FOLIATION_*` variables in `env` and flags.
pub fn resolve_config<I>(cli: &Cli, env: I) -> Result<Config, CliError>
where
    I: IntoIterator<Item = (String, String)>,
{
    let text = match &cli.config {
        Some(p) => Some(std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?),
        None => None,
    };
    let mut config = Config::resolve(text.as_deref(), env)?;
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(w) = cli.workers {
        config.workers = w;
    }
    config.validate()?;
    Ok(config)
}

pub fn dispatch(ctx: &RunContext, command: &Command) -> Result<CommandOutput, CliError> {
    match command {
        Command::Algebra(a) => commands::algebra::cmd_algebra(ctx, a),
        Command::Forge(a) => commands::forge::cmd_forge(ctx, a),
        Command::Cohomology(a) => commands::cohomology::cmd_cohomology(ctx, a),
        Command::Dynamics(a) => commands::dynamics::cmd_dynamics(ctx, a),
        Command::Suspension(a) => commands::suspension::cmd_suspension(ctx, a),
    }
}

/// Result of a full run.
#[derive(Debug)]
pub struct RunOutcome {
    pub output: CommandOutput,
    pub report: String,
    pub files: Vec<PathBuf>,
}

/// Parse arguments, run the subcommand on a pool of the configured size and
/// write all outputs.
pub fn run<I, T, E>(args: I, env: E) -> Result<RunOutcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    E: IntoIterator<Item = (String, String)>,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Validation(e.to_string()))?;
    run_cli(&cli, env)
}

pub fn run_cli<E>(cli: &Cli, env: E) -> Result<RunOutcome, CliError>
where
    E: IntoIterator<Item = (String, String)>,
{
    let config = resolve_config(cli, env)?;
    let ctx = RunContext {
        config: config.clone(),
        cache_dir: cli.cache.clone(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let start = Instant::now();
    let output = pool.install(|| dispatch(&ctx, &cli.command))?;
    let wall = start.elapsed().as_secs_f64();
    let report = render_report(&output, &config);
    let files = write_outputs(&cli.out, &output, &config, wall)?;
    Ok(RunOutcome { output, report, files })
}
