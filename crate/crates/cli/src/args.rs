use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{BenchMode, Format, TransformKind, Which};

#[derive(Debug, Parser)]
#[command(name = "adft", version, about = "8-point approximate DFT: matrices, search, beam patterns, benchmarks")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct CommonArgs {
    /// Element spacing in wavelengths [default: 0.5]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub spacing: Option<f64>,

    /// Operating frequency in GHz; spacing becomes 0.5 * freq / design freq
    #[arg(long = "freq-ghz", global = true, allow_negative_numbers = true, requires = "design_freq_ghz")]
    pub freq_ghz: Option<f64>,

    /// Frequency in GHz at which the elements are half a wavelength apart
    #[arg(long = "design-freq-ghz", global = true, allow_negative_numbers = true)]
    pub design_freq_ghz: Option<f64>,

    /// Angle grid step in degrees
    #[arg(long = "grid-step", global = true, default_value_t = 0.1, allow_negative_numbers = true)]
    pub grid_step: f64,

    /// Pattern floor in dB below the peak
    #[arg(long = "floor-db", global = true, default_value_t = -60.0, allow_negative_numbers = true)]
    pub floor_db: f64,

    /// Seed for random frames and Monte Carlo trials
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the result here instead of standard output
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the exact DFT, the approximate matrix, or the factorization stages
    Matrix(MatrixArgs),
    /// Check the factorization identity and fast/direct agreement
    Verify(VerifyArgs),
    /// Rank all 625 symmetric candidates by Frobenius error
    Search(SearchArgs),
    /// Beam patterns of every transform row over the angle grid
    Pattern(PatternArgs),
    /// Feed a plane wave through the fast transform
    Beamsim(BeamsimArgs),
    /// Time the fast and direct transforms
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, value_enum, default_value_t = Which::Approx)]
    pub which: Which,

    /// Transform size (only the exact DFT accepts sizes other than 8)
    #[arg(long, default_value_t = 8)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Random frames for the fast/direct comparison
    #[arg(long, default_value_t = 1000)]
    pub frames: usize,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long = "top-k", default_value_t = 10)]
    pub top_k: usize,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    #[arg(long, value_enum, default_value_t = TransformKind::Approx)]
    pub transform: TransformKind,

    /// Monte Carlo trials with perturbed weights (0 = nominal patterns only)
    #[arg(long, default_value_t = 0)]
    pub trials: usize,

    /// Beam to perturb when --trials is set
    #[arg(long, default_value_t = 0)]
    pub beam: usize,

    /// Relative gain error standard deviation
    #[arg(long = "gain-sigma", default_value_t = 0.0, allow_negative_numbers = true)]
    pub gain_sigma: f64,

    /// Phase error standard deviation in degrees
    #[arg(long = "phase-sigma-deg", default_value_t = 0.0, allow_negative_numbers = true)]
    pub phase_sigma_deg: f64,
}

#[derive(Debug, Args)]
pub struct BeamsimArgs {
    /// Arrival angle in degrees from broadside
    #[arg(long, allow_negative_numbers = true)]
    pub angle: f64,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub amplitude: f64,

    /// Carrier phase in degrees
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phase: f64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 1_000_000)]
    pub frames: usize,

    #[arg(long, value_enum, default_value_t = BenchMode::Both)]
    pub mode: BenchMode,

    /// Worker threads, each with its own buffers
    #[arg(long, default_value_t = 1)]
    pub lanes: usize,
}
