//! Metric, torsion and curvature induced on the base by `α`.

use nalgebra::DVector;
use jalpha::models::model_by_name;

fn main() -> jalpha::Result<()> {
    let hyp = model_by_name("hyperbolic3")?;
    let x = [0.4, -0.3, 2.0];
    let g = hyp.induced_metric(&x)?;
    println!("hyperbolic metric at t = 2:\n{}", g.g_matrix);

    let (u, v) = (DVector::from_column_slice(&[1.0, 0.3, 0.0]), DVector::from_column_slice(&[0.0, 1.0, -0.5]));
    println!("torsion T(u, v) = {:?}", hyp.torsion(&x, &u, &v)?.as_slice());
    println!("sectional curvature, hyperbolic3: {:.12}", hyp.sectional_curvature(&x, &u, &v)?);

    let su2 = model_by_name("homog:su2")?;
    println!("sectional curvature, homog:su2:   {:.12}", su2.sectional_curvature(&[0.2, 0.1, -0.3], &u, &v)?);
    let flat = model_by_name("abelian:3")?;
    println!("sectional curvature, abelian:3:   {:.12}", flat.sectional_curvature(&[0.0; 3], &u, &v)?);

    let w = DVector::from_column_slice(&[0.2, 0.0, 1.0]);
    let r = hyp.riemann_curvature(&x, &u, &v, &w, 1e-10, false)?;
    println!("R(u, v)w = {:?}", r.as_slice());

    // Christoffel symbols of the pulled-back connection: Γ^λ_μν in the chart
    let gamma = hyp.connection_coefficients(&[0.0, 0.0, 1.0])?;
    for (l, m) in gamma.iter().enumerate() {
        println!("Γ^{} =\n{}", l + 1, m);
    }
    Ok(())
}
