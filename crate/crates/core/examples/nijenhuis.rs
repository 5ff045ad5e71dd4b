//! The Nijenhuis tensor of `J_α`: closed form against a finite-difference
//! evaluation through flows of the fundamental fields.

use std::sync::Arc;

use jalpha::gauge::{BundlePoint, DerivMode, Domain, GaugeChart, PolynomialFields};
use jalpha::lie::{AlgebraElement, LieAlgebra};
use jalpha::models::model_by_name;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> jalpha::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fields = PolynomialFields::random(3, 2, 1.0, &mut rng);
    let chart = GaugeChart::new(LieAlgebra::su2(), Domain::cube(3, -0.5, 0.5), Arc::new(fields), DerivMode::Analytic)?;
    let alg = chart.algebra().clone();
    let p = BundlePoint::new(vec![0.1, -0.05, 0.2], alg.exp_real(&AlgebraElement::random(3, &mut rng, 1.0))?);
    let (x, y) = (AlgebraElement::random(3, &mut rng, 1.0), AlgebraElement::random(3, &mut rng, 1.0));

    let exact = chart.nijenhuis_closed_form(&p, &x, &y)?;
    println!("closed form |N(X#, Y#)| = {:.6e}", chart.tangent_norm(&p, &exact)?);
    let mut last: Option<f64> = None;
    for h in [2e-3, 1e-3, 5e-4] {
        let approx = chart.nijenhuis_numeric(&p, &x, &y, h)?;
        let err = chart.tangent_norm(&p, &(&approx - &exact))?;
        let order = last.map(|e| (e / err).log2());
        println!("h = {h:.1e}: error {err:.3e}{}", order.map(|o| format!(", order {o:.2}")).unwrap_or_default());
        last = Some(err);
    }

    // integrable models: both evaluations vanish
    for name in ["hyperbolic3", "homog:su2"] {
        let chart = model_by_name(name)?;
        let k = chart.algebra().exp_real(&AlgebraElement::random(3, &mut rng, 1.0))?;
        let p = BundlePoint::new(vec![0.2, 0.1, 1.0], k);
        let n = chart.nijenhuis_numeric(&p, &x, &y, 1e-3)?;
        let closed = chart.nijenhuis_closed_form(&p, &x, &y)?;
        println!("{name}: |N| numeric = {:.2e}, closed = {:.2e}", chart.tangent_norm(&p, &n)?, chart.tangent_norm(&p, &closed)?);
    }
    Ok(())
}
