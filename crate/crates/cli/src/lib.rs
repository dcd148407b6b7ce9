//! `spike-tyke` command-line interface.
//!
//! Exit codes: 0 success, 1 evaluation below threshold, 2 validation
//! error, 3 I/O error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use spike_tyke::Variant;

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod svg;

pub use config::{ConstantSet, FileConfig, Format};
pub use error::{CliError, CliResult, EXIT_BELOW_THRESHOLD, EXIT_IO, EXIT_OK, EXIT_VALIDATION};

#[derive(Debug, Parser)]
#[command(name = "spike-tyke", version, about = "Quantized neuron model toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample blackbody curves, one per temperature.
    Planck(PlanckArgs),
    /// Build the zero-prefixed spike train from transformed Planck curves.
    SpikeTrain(SpikeTrainArgs),
    /// Tabulate quantized resistances and potentials over a range of n.
    Quantize(QuantizeArgs),
    /// Replay spike pairs through the STDP rule.
    Stdp(StdpArgs),
    /// Count matched points between the model train and a reference.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Flat TOML file with default settings.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output path, or `-` for stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Named physical-constant set.
    #[arg(long, value_enum)]
    pub constants: Option<ConstantSet>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    /// First wavelength (m).
    #[arg(long)]
    pub lambda_start: Option<f64>,
    /// Wavelength step (m).
    #[arg(long)]
    pub lambda_step: Option<f64>,
    /// Samples per curve.
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CurveArgs {
    /// Comma-separated temperatures (K).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub temperatures: Option<Vec<f64>>,
    /// `energy_density` or `radiance`.
    #[arg(long)]
    pub variant: Option<Variant>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TransformArgs {
    /// Area A (m²) of the intensity-to-potential map.
    #[arg(long)]
    pub area: Option<f64>,
    /// Current I (A) of the intensity-to-potential map.
    #[arg(long)]
    pub current: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PlanckArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SpikeTrainArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub transform: TransformArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct QuantizeArgs {
    #[arg(long)]
    pub n_min: Option<u64>,
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Charge Q (C). Required.
    #[arg(long, allow_hyphen_values = true)]
    pub charge: Option<f64>,
    /// Current I (A) for the potential column. Required.
    #[arg(long, allow_hyphen_values = true)]
    pub current: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct StdpArgs {
    /// CSV of `t_post_s,t_pre_s` rows (header optional).
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Learning rate μ.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    /// Reference delay τ_d (s).
    #[arg(long)]
    pub tau_d: Option<f64>,
    /// Initial weight.
    #[arg(long, allow_hyphen_values = true)]
    pub w0: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct EvaluateArgs {
    /// First sample time (s).
    #[arg(long)]
    pub t0: Option<f64>,
    /// Last sample time (s), inclusive.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Sample spacing (s).
    #[arg(long)]
    pub dt: Option<f64>,
    /// Relative tolerance for a matched point.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Minimum match fraction for exit status 0.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// `script` (transcribed reference curves) or `model` (self-comparison).
    #[arg(long)]
    pub reference: Option<String>,
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub transform: TransformArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Dispatches an already-parsed command. Returns the exit code.
pub fn execute(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Planck(a) => commands::planck(&a),
        Command::SpikeTrain(a) => commands::spike_train(&a),
        Command::Quantize(a) => commands::quantize(&a),
        Command::Stdp(a) => commands::stdp(&a),
        Command::Evaluate(a) => commands::evaluate(&a),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// printing diagnostics to stderr. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
