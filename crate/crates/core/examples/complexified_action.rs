//! The complexified action `ψ(p, k e^{iX})` on the sample bundle `G → G/K`:
//! it is an action, and it agrees with right translation in `G`.

use jalpha::dynamics::IntegratorConfig;
use jalpha::gauge::BundlePoint;
use jalpha::lie::{AlgebraElement, ComplexAlgebraElement};
use jalpha::models::build_homogeneous_sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> jalpha::Result<()> {
    let sample = build_homogeneous_sample("su2")?;
    let chart = &sample.chart;
    let alg = sample.algebra().clone();
    let cfg = IntegratorConfig::with_step(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let p = BundlePoint::new(vec![0.2, -0.1, 0.3], alg.exp_real(&AlgebraElement::random(3, &mut rng, 1.0))?);
    let small = |rng: &mut ChaCha8Rng| {
        ComplexAlgebraElement::new(AlgebraElement::random(3, rng, 0.3), AlgebraElement::random(3, rng, 0.3))
    };
    let mut worst_action = 0.0f64;
    let mut worst_translation = 0.0f64;
    for _ in 0..10 {
        let g = alg.exp_matrix(&small(&mut rng))?;
        let h = alg.exp_matrix(&small(&mut rng))?;
        let twice = chart.complexified_action(&chart.complexified_action(&p, &g, &cfg)?, &h, &cfg)?;
        let once = chart.complexified_action(&p, &(&g * &h), &cfg)?;
        worst_action = worst_action.max(twice.distance(&once));
        // in G itself, ψ is right multiplication
        let right = sample.from_group(&(&sample.to_group(&p) * &g))?;
        worst_translation = worst_translation.max(chart.complexified_action(&p, &g, &cfg)?.distance(&right));
    }
    println!("max |ψ(ψ(p,g),h) - ψ(p,gh)|  = {worst_action:.3e}");
    println!("max |ψ(p,g) - p·g|           = {worst_translation:.3e}");

    let x = AlgebraElement::new(vec![0.4, -0.2, 0.7]);
    for h in [1e-2, 5e-3, 2.5e-3] {
        let (e1, e2) = chart.psi_derivative_check(&p, &x, h, &cfg)?;
        println!("h = {h:.1e}: |dψ(X) - X#| = {e1:.3e}, |dψ(iX) - J X#| = {e2:.3e}");
    }
    Ok(())
}
