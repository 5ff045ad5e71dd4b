//! Geodesics of upper half-space as base projections of horizontal `J_α`
//! flows.

use nalgebra::DVector;
use jalpha::dynamics::IntegratorConfig;
use jalpha::error::Error;
use jalpha::models::model_by_name;

fn main() -> jalpha::Result<()> {
    let chart = model_by_name("hyperbolic3")?;
    let cfg = IntegratorConfig::with_step(1e-3);

    // vertical line: x3(t) = e^t
    let up = DVector::from_column_slice(&[0.0, 0.0, 1.0]);
    let end = chart.geodesic_shoot(&[0.0, 0.0, 1.0], &up, 1.0, &cfg)?;
    println!("vertical line at t = 1: x3 = {:.12} (e = {:.12})", end[2], std::f64::consts::E);

    // semicircle through (0, 0, 1) with horizontal velocity: x1 = tanh t, x3 = sech t
    let side = DVector::from_column_slice(&[1.0, 0.0, 0.0]);
    let (gen, traj) = chart.geodesic_trajectory(&[0.0, 0.0, 1.0], &side, 2.0, &cfg)?;
    let last = traj.last().expect("trajectory");
    let t = last.t;
    println!(
        "semicircle at t = {t}: ({:.9}, {:.9}) vs ({:.9}, {:.9})",
        last.p.x[0],
        last.p.x[2],
        t.tanh(),
        1.0 / t.cosh()
    );
    println!("geodesic residual {:.2e}, speed drift {:.2e}", chart.geodesic_residual(&traj, &gen)?, chart.energy_drift(&traj, &gen)?);

    // leaving the chart is reported, not hidden
    match chart.geodesic_shoot(&[0.0, 0.0, 1.0], &up, 10.0, &cfg) {
        Err(Error::ChartExit { t }) => println!("vertical line leaves the chart at t ≈ {t:.3}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
