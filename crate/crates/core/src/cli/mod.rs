//! Batch front end: scenario files in, JSON reports and CSV data out.
//!
//! Exit codes: 0 when the verdict passes, 1 when it fails, 2 for usage or
//! schema errors and 3 for numerical failures.

mod commands;
mod sampling;
mod scenario;

use std::fmt;
use std::path::{Path as FsPath, PathBuf};

use serde_json::Value;

use crate::error::Error;

pub use commands::{cmd_curvature, cmd_curve, cmd_geodesic, cmd_verify};
pub use sampling::{rng, HaltonSampler, MARGIN};
pub use scenario::{
    AlgebraRef, CurvatureComponent, CurveParams, DomainSpec, GeneratorSpec, GeodesicInit, GeodesicParams, InlineChart, ModelRef,
    Scenario, StabilizerSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Curvature,
    Geodesic,
    Curve,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Curvature => "curvature",
            Command::Geodesic => "geodesic",
            Command::Curve => "curve",
        }
    }
}

/// Command-line overrides of scenario values.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Directory for reports; nothing is written when `None`.
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub points: Option<usize>,
    pub step: Option<f64>,
    pub tol: Option<f64>,
}

impl RunOptions {
    pub(crate) fn seed(&self, s: &Scenario) -> u64 {
        self.seed.or(s.seed).unwrap_or(0)
    }

    pub(crate) fn points(&self, s: &Scenario, default: usize) -> usize {
        self.points.or(s.points).unwrap_or(default)
    }

    pub(crate) fn step(&self, s: &Scenario, default: f64) -> f64 {
        self.step.or(s.step).unwrap_or(default)
    }

    pub(crate) fn tol(&self, s: &Scenario, default: f64) -> f64 {
        self.tol.or(s.tol).unwrap_or(default)
    }
}

/// Result of a command: the JSON report and its pass/fail verdict.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Invalid(_)
            | Error::Json(_)
            | Error::DimensionMismatch { .. }
            | Error::UnsupportedModel(_)
            | Error::NoRepresentation(_)
            | Error::ZeroForm => 2,
            _ => 3,
        };
        Self { code, message: e.to_string() }
    }
}

pub fn run(cmd: Command, scenario: &Scenario, opts: &RunOptions) -> Result<Outcome, CliError> {
    log::info!("{} on model {}", cmd.name(), scenario.model_name());
    match cmd {
        Command::Verify => cmd_verify(scenario, opts),
        Command::Curvature => cmd_curvature(scenario, opts),
        Command::Geodesic => cmd_geodesic(scenario, opts),
        Command::Curve => cmd_curve(scenario, opts),
    }
}

pub fn run_file(cmd: Command, path: &FsPath, opts: &RunOptions) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let scenario = Scenario::from_json(&text).map_err(|e| CliError::usage(format!("invalid scenario {}: {e}", path.display())))?;
    run(cmd, &scenario, opts)
}
