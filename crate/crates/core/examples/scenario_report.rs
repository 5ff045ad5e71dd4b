//! Driving the batch commands from code: the same scenarios the `jalpha`
//! binary reads, with reports kept in memory.

use jalpha::cli::{run, Command, RunOptions, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = RunOptions { points: Some(40), seed: Some(17), ..RunOptions::default() };
    let cases = [
        (Command::Verify, r#"{"model": "hyperbolic3"}"#),
        (Command::Verify, r#"{"model": "abelian:2", "abelian_curvature": [{"mu": 0, "nu": 1, "value": [1.5, 0]}]}"#),
        (Command::Curvature, r#"{"model": "homog:so3", "expected_curvature": -1.0}"#),
        (Command::Geodesic, r#"{"model": "hyperbolic3", "geodesic": {"duration": 1.0}}"#),
    ];
    for (cmd, text) in cases {
        let scenario = Scenario::from_json(text)?;
        let outcome = run(cmd, &scenario, &opts)?;
        println!("{:>9} {:<12} exit {} verdict {}", cmd.name(), scenario.model_name(), outcome.exit_code(), outcome.report["verdict"]);
    }
    Ok(())
}
