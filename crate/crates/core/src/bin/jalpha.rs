use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jalpha::cli::{run_file, Command, RunOptions};

/// Checks and experiments for connection-induced almost complex structures.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Integrability residuals and Nijenhuis tensors over sampled points
    Verify(Common),
    /// Sectional curvature samples and histogram
    Curvature(Common),
    /// Geodesic trajectories from horizontal J-flows
    Geodesic(Common),
    /// Development, lattice condition, factorisation and quadric checks
    Curve(Common),
}

#[derive(Args)]
struct Common {
    /// Scenario JSON file
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory for JSON and CSV
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of sample points
    #[arg(long)]
    points: Option<usize>,
    /// Integrator step
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("JALPHA_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (cmd, args) = match cli.command {
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::Curvature(a) => (Command::Curvature, a),
        Cmd::Geodesic(a) => (Command::Geodesic, a),
        Cmd::Curve(a) => (Command::Curve, a),
    };
    let opts = RunOptions { out: Some(args.out), seed: args.seed, points: args.points, step: args.step, tol: args.tol };
    match run_file(cmd, &args.scenario, &opts) {
        Ok(outcome) => {
            println!("{}", serde_json::to_string_pretty(&outcome.report).expect("report serialises"));
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
