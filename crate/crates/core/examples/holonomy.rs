//! Horizontal lifts, holonomy around loops and parallel transport on `ad(P)`.

use jalpha::dynamics::IntegratorConfig;
use jalpha::lie::AlgebraElement;
use jalpha::models::{build_abelian_chart, model_by_name, single_component_curvature};

fn square(eps: f64) -> Vec<Vec<f64>> {
    vec![vec![0.0, 0.0], vec![eps, 0.0], vec![eps, eps], vec![0.0, eps], vec![0.0, 0.0]]
}

fn main() -> jalpha::Result<()> {
    let cfg = IntegratorConfig::with_step(1e-3);
    let f = single_component_curvature(2, 0, 1, AlgebraElement::new(vec![2.0, 0.0]));
    let chart = build_abelian_chart(2, &f)?;
    let alg = chart.algebra().clone();
    for eps in [0.1, 0.2, 0.4] {
        // flat torus bundle: k = exp(-ε² F_01)
        let k = chart.holonomy(&square(eps), &cfg)?;
        let log = alg.log_near_identity(&k)?;
        println!("ε = {eps}: log holonomy = {:?}, expected {:?}", log.coeffs().as_slice(), [-2.0 * eps * eps, 0.0]);
    }

    // transport on the hyperbolic model preserves the norm
    let hyp = model_by_name("hyperbolic3")?;
    let path = vec![vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 1.5], vec![1.0, 2.0, 0.8], vec![0.0, 0.0, 1.0]];
    let s = AlgebraElement::new(vec![0.3, -0.4, 1.2]);
    let moved = hyp.parallel_transport(&path, &s, &cfg)?;
    let hol = hyp.holonomy(&path, &cfg)?;
    println!("|s| = {:.12}, |P s| = {:.12}", hyp.algebra().norm(&s), hyp.algebra().norm(&moved));
    // rotation angle of the SO(3) holonomy from its trace
    let cos = ((hol.matrix().trace().re - 1.0) / 2.0).clamp(-1.0, 1.0);
    println!("hyperbolic loop holonomy angle = {:.6} rad", cos.acos());
    Ok(())
}
