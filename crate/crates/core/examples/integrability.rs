//! Integrability residuals `d_A α = 0` and `F_A = ½[α ∧ α]` on the built-in
//! models and on a random polynomial chart.

use std::sync::Arc;

use jalpha::gauge::{DerivMode, Domain, GaugeChart, PolynomialFields};
use jalpha::lie::LieAlgebra;
use jalpha::models::{build_abelian_chart, model_by_name, single_component_curvature};
use jalpha::lie::AlgebraElement;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(name: &str, chart: &GaugeChart, x: &[f64]) -> jalpha::Result<()> {
    let r = chart.integrability_residuals(x)?;
    println!("{name:>14}: r1 = {:.2e}, r2 = {:.2e}", r.r1, r.r2);
    Ok(())
}

fn main() -> jalpha::Result<()> {
    report("hyperbolic3", &model_by_name("hyperbolic3")?, &[0.3, -1.2, 0.7])?;
    report("homog:su2", &model_by_name("homog:su2")?, &[0.3, -0.2, 0.5])?;
    report("homog:so3", &model_by_name("homog:so3")?, &[-0.4, 0.1, 0.9])?;

    // flat frame with curvature: r2 picks up |F|
    let f = single_component_curvature(2, 0, 1, AlgebraElement::new(vec![0.5, 0.0]));
    report("abelian:2, F≠0", &build_abelian_chart(2, &f)?, &[0.1, 0.2])?;

    // generic fields are not integrable
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let fields = PolynomialFields::random(3, 2, 1.0, &mut rng);
    let chart = GaugeChart::new(LieAlgebra::su2(), Domain::cube(3, -0.5, 0.5), Arc::new(fields), DerivMode::Analytic)?;
    report("random poly", &chart, &[0.1, 0.1, -0.2])?;

    // analytic and finite-difference derivatives agree
    let numeric = model_by_name("hyperbolic3")?.with_mode(DerivMode::Numeric { h: 1e-5 });
    report("hyperbolic3 fd", &numeric, &[0.3, -1.2, 0.7])?;
    Ok(())
}
