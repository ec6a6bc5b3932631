use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wgrate_core::RateMethod;

#[derive(Debug, Parser)]
#[command(
    name = "wgrate",
    version,
    about = "Information rate of an ideal rectangular metallic waveguide"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact and asymptotic dimensionless rate over a grid of gamma values.
    Sweep(SweepArgs),
    /// Rate in bits per second for a square guide of given area and power.
    Rate(RateArgs),
    /// Broadband rate restricted to one propagation direction.
    SingleDirection(SingleDirectionArgs),
    /// Run the numerical oracle suite; exits 3 if any bound is violated.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Asymptotic,
}

impl From<Method> for RateMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Exact => RateMethod::Exact,
            Method::Asymptotic => RateMethod::Asymptotic,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Relative tolerance for quadrature and mode-sum truncation.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.1)]
    pub gamma_min: f64,
    #[arg(long, default_value_t = 1e8)]
    pub gamma_max: f64,
    #[arg(long, default_value_t = 41)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    pub spacing: Spacing,
    /// Number of field species (1 or 2).
    #[arg(long, default_value_t = 2)]
    pub species: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct RateArgs {
    /// Cross-section area in m².
    #[arg(long)]
    pub area: f64,
    /// Average power in W.
    #[arg(long)]
    pub power: f64,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    pub method: Method,
    #[arg(long, default_value_t = 2)]
    pub species: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct SingleDirectionArgs {
    /// Average power in W.
    #[arg(long)]
    pub power: f64,
    /// Polar angle from the guide axis, radians in [0, pi/2).
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 1)]
    pub species: u32,
    /// Accepted for symmetry with `rate`; the single-direction rate does not depend on it.
    #[arg(long)]
    pub area: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// Quadrature tolerance of the oracle integrals.
    #[arg(long, default_value_t = wgrate_core::verify::DEFAULT_ORACLE_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Shift every expected value by this amount (exercises the failure path).
    #[arg(long, hide = true, default_value_t = 0.0)]
    pub inject_expected_offset: f64,
}
