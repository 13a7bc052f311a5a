//! Validated run configuration.
//!
//! Every flag is checked here before any computation starts, and a bad value
//! is reported with the flag's name.

use adft_core::beamsim::{ArrayGeometry, PatternOptions};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::args::{Cli, Command};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Exact,
    Approx,
    Stages,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    Exact,
    Approx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum BenchMode {
    Direct,
    Fast,
    Both,
}

pub const MAX_EXACT_N: usize = 64;
pub const MAX_TRIALS: usize = 100_000;
pub const MAX_LANES: usize = 256;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryConfig {
    pub n_elements: usize,
    pub spacing_wavelengths: f64,
    pub freq_ghz: Option<f64>,
    pub design_freq_ghz: Option<f64>,
}

impl GeometryConfig {
    pub fn geometry(&self) -> ArrayGeometry {
        ArrayGeometry::new(self.n_elements, self.spacing_wavelengths).expect("validated")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub grid_step_deg: f64,
    pub floor_db: f64,
}

impl GridConfig {
    pub fn options(&self) -> PatternOptions {
        PatternOptions { grid_step_deg: self.grid_step_deg, floor_db: self.floor_db }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixConfig {
    pub which: Which,
    pub n: usize,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub frames: usize,
    pub seed: u64,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub top_k: usize,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbationConfig {
    pub trials: usize,
    pub beam: usize,
    pub gain_sigma: f64,
    pub phase_sigma_deg: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternConfig {
    pub transform: TransformKind,
    pub geometry: GeometryConfig,
    pub grid: GridConfig,
    pub perturbation: Option<PerturbationConfig>,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeamsimConfig {
    pub geometry: GeometryConfig,
    pub angle_deg: f64,
    pub amplitude: f64,
    pub phase_deg: f64,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub frames: usize,
    pub mode: BenchMode,
    pub lanes: usize,
    pub seed: u64,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum RunConfig {
    Matrix(MatrixConfig),
    Verify(VerifyConfig),
    Search(SearchConfig),
    Pattern(PatternConfig),
    Beamsim(BeamsimConfig),
    Bench(BenchConfig),
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let c = &cli.common;
        Ok(match &cli.command {
            Command::Matrix(a) => {
                if a.which != Which::Exact && a.n != 8 {
                    return Err(CliError::usage("--n", "only the exact DFT has sizes other than 8"));
                }
                if a.n == 0 || a.n > MAX_EXACT_N {
                    return Err(CliError::usage("--n", format!("must be in 1..={MAX_EXACT_N}")));
                }
                let format = pick_format(c.format, Format::Text, &[Format::Text, Format::Json])?;
                RunConfig::Matrix(MatrixConfig { which: a.which, n: a.n, format })
            }
            Command::Verify(a) => {
                if a.frames == 0 {
                    return Err(CliError::usage("--frames", "must be at least 1"));
                }
                let format = pick_format(c.format, Format::Text, &[Format::Text, Format::Json])?;
                RunConfig::Verify(VerifyConfig { frames: a.frames, seed: c.seed, format })
            }
            Command::Search(a) => {
                if !(1..=625).contains(&a.top_k) {
                    return Err(CliError::usage("--top-k", "must be in 1..=625"));
                }
                let format = pick_format(c.format, Format::Text, &[Format::Text, Format::Json, Format::Csv])?;
                RunConfig::Search(SearchConfig { top_k: a.top_k, format })
            }
            Command::Pattern(a) => {
                let perturbation = if a.trials == 0 {
                    None
                } else {
                    if a.trials > MAX_TRIALS {
                        return Err(CliError::usage("--trials", format!("must be at most {MAX_TRIALS}")));
                    }
                    if a.beam >= 8 {
                        return Err(CliError::usage("--beam", "must be in 0..=7"));
                    }
                    non_negative("--gain-sigma", a.gain_sigma)?;
                    non_negative("--phase-sigma-deg", a.phase_sigma_deg)?;
                    Some(PerturbationConfig {
                        trials: a.trials,
                        beam: a.beam,
                        gain_sigma: a.gain_sigma,
                        phase_sigma_deg: a.phase_sigma_deg,
                        seed: c.seed,
                    })
                };
                let format = pick_format(c.format, Format::Csv, &[Format::Csv, Format::Json, Format::Text])?;
                RunConfig::Pattern(PatternConfig {
                    transform: a.transform,
                    geometry: geometry(cli)?,
                    grid: grid(cli)?,
                    perturbation,
                    format,
                })
            }
            Command::Beamsim(a) => {
                if !a.angle.is_finite() || a.angle.abs() > 90.0 {
                    return Err(CliError::usage("--angle", "must be within [-90, 90] degrees"));
                }
                if !a.amplitude.is_finite() || a.amplitude <= 0.0 {
                    return Err(CliError::usage("--amplitude", "must be > 0"));
                }
                if !a.phase.is_finite() {
                    return Err(CliError::usage("--phase", "must be finite"));
                }
                let format = pick_format(c.format, Format::Text, &[Format::Text, Format::Json, Format::Csv])?;
                RunConfig::Beamsim(BeamsimConfig {
                    geometry: geometry(cli)?,
                    angle_deg: a.angle,
                    amplitude: a.amplitude,
                    phase_deg: a.phase,
                    format,
                })
            }
            Command::Bench(a) => {
                if a.frames == 0 {
                    return Err(CliError::usage("--frames", "must be at least 1"));
                }
                if a.lanes == 0 || a.lanes > MAX_LANES {
                    return Err(CliError::usage("--lanes", format!("must be in 1..={MAX_LANES}")));
                }
                let format = pick_format(c.format, Format::Text, &[Format::Text, Format::Json])?;
                RunConfig::Bench(BenchConfig { frames: a.frames, mode: a.mode, lanes: a.lanes, seed: c.seed, format })
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            RunConfig::Matrix(_) => "matrix",
            RunConfig::Verify(_) => "verify",
            RunConfig::Search(_) => "search",
            RunConfig::Pattern(_) => "pattern",
            RunConfig::Beamsim(_) => "beamsim",
            RunConfig::Bench(_) => "bench",
        }
    }

    /// Seed echoed into provenance, for commands that draw random numbers.
    pub fn seed(&self) -> Option<u64> {
        match self {
            RunConfig::Verify(c) => Some(c.seed),
            RunConfig::Bench(c) => Some(c.seed),
            RunConfig::Pattern(c) => c.perturbation.as_ref().map(|p| p.seed),
            _ => None,
        }
    }
}

fn pick_format(given: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = given.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<String> = allowed.iter().map(|a| format!("{a:?}").to_lowercase()).collect();
        Err(CliError::usage("--format", format!("this command supports {}", names.join(", "))))
    }
}

fn non_negative(flag: &'static str, x: f64) -> Result<(), CliError> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(CliError::usage(flag, "must be finite and >= 0"))
    }
}

fn positive(flag: &'static str, x: f64) -> Result<(), CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(CliError::usage(flag, "must be finite and > 0"))
    }
}

fn geometry(cli: &Cli) -> Result<GeometryConfig, CliError> {
    let c = &cli.common;
    let spacing = match (c.spacing, c.freq_ghz) {
        (Some(_), Some(_)) => return Err(CliError::usage("--spacing", "cannot be combined with --freq-ghz")),
        (Some(s), None) => {
            positive("--spacing", s)?;
            s
        }
        (None, Some(f)) => {
            positive("--freq-ghz", f)?;
            let design = c.design_freq_ghz.expect("clap enforces --design-freq-ghz");
            positive("--design-freq-ghz", design)?;
            0.5 * f / design
        }
        (None, None) => 0.5,
    };
    Ok(GeometryConfig {
        n_elements: 8,
        spacing_wavelengths: spacing,
        freq_ghz: c.freq_ghz,
        design_freq_ghz: c.design_freq_ghz,
    })
}

fn grid(cli: &Cli) -> Result<GridConfig, CliError> {
    let c = &cli.common;
    if !(c.grid_step.is_finite() && c.grid_step > 0.0 && c.grid_step <= 90.0) {
        return Err(CliError::usage("--grid-step", "must be in (0, 90] degrees"));
    }
    if !(c.floor_db.is_finite() && c.floor_db < 0.0) {
        return Err(CliError::usage("--floor-db", "must be finite and < 0"));
    }
    Ok(GridConfig { grid_step_deg: c.grid_step, floor_db: c.floor_db })
}
