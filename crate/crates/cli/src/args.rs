use std::path::PathBuf;

use boson_bounds::{Potential, PotentialKind, Problem};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::sweep::SweepConfig;
use crate::verify::Group;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "boson-bounds",
    version,
    about = "Ground-state energy bounds for N-boson systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower and upper bounds at a single coupling.
    Bounds(BoundsArgs),
    /// Bounds over a uniform grid of couplings.
    Sweep(SweepArgs),
    /// Bounds for a system given in physical units.
    Physical(PhysicalArgs),
    /// Run the built-in verification checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Oscillator,
    Kratzer,
}

impl From<Shape> for PotentialKind {
    fn from(s: Shape) -> Self {
        match s {
            Shape::Oscillator => PotentialKind::SoftCoreOscillator,
            Shape::Kratzer => PotentialKind::Kratzer,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhysicalShape {
    Oscillator,
    Kratzer,
    /// One-dimensional attractive δ interaction, solved exactly.
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ShapeArgs {
    #[arg(long, value_enum)]
    pub potential: Shape,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 3)]
    pub d: u32,
}

impl ShapeArgs {
    pub fn problem(&self, v: f64) -> Result<Problem, CliError> {
        let pot = Potential::new(self.potential.into(), self.lambda, self.mu)?;
        Ok(Problem::new(pot, self.d, v)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub v: f64,
    /// Also optimize the collective-field trial density (d = 3 only).
    #[arg(long)]
    pub phi: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub v_min: f64,
    #[arg(long)]
    pub v_max: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long)]
    pub phi: bool,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

impl SweepArgs {
    pub fn into_config(self) -> SweepConfig {
        SweepConfig {
            potential: self.shape.potential,
            lambda: self.shape.lambda,
            mu: self.shape.mu,
            d: self.shape.d,
            v_min: self.v_min,
            v_max: self.v_max,
            steps: self.steps,
            include_phi: self.phi,
            out: self.out,
            format: self.format,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PhysicalArgs {
    #[arg(long, value_enum, default_value_t = PhysicalShape::Oscillator)]
    pub potential: PhysicalShape,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 3)]
    pub d: u32,
    /// Number of particles.
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    /// Potential depth.
    #[arg(long)]
    pub v0: f64,
    /// Potential range.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long)]
    pub phi: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Restrict to one group of checks.
    #[arg(long, value_enum)]
    pub only: Option<Group>,
}
