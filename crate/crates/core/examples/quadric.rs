//! Conformality of `Im f` and the quadric `Σ μ_i² = 0` for polynomial forms,
//! plus the projectivised map `z ↦ [μ(z)]`.

use num_complex::Complex64;
use jalpha::curves::{complex_element, conformality, projectivize, quadric_polynomial, type10_residual, CurveForm, Surface};
use jalpha::lie::LieAlgebra;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> jalpha::Result<()> {
    let su2 = LieAlgebra::su2();
    let disc = Surface::Disc { center: c(0.0, 0.0), radius: 1.0 };
    // μ = (X1 + i X2) h(z) with h = z - z³
    let iso = complex_element(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]);
    let h = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)];
    let eta = CurveForm::polynomial(h.iter().map(|a| iso.scale(*a)).collect(), disc.clone())?;
    println!("isotropic: Σμ² coefficients {:?}", quadric_polynomial(&su2, &eta).coeffs);
    let z = c(0.3, -0.4);
    let conf = conformality(&su2, &eta, z);
    println!("           conformal defect {:.1e}, pullback\n{}", conf.defect, conf.pullback);
    println!("           (1,0)-type residual {:.1e}", type10_residual(&su2, |a, b| eta.eval(z, (a, b))));
    let p = projectivize(&eta, c(0.0, 0.0))?;
    println!("           [μ̃(0)] = {:?} after dividing z^{}", p.coords, p.order);

    // a real direction is not conformal even though Im⟨μ, μ̄⟩ = 0
    let real = CurveForm::polynomial(vec![complex_element(&[1.0, 0.0, 0.0], &[0.0; 3])], disc)?;
    let conf = conformality(&su2, &real, z);
    println!("real μ = X1: residual {:.1e}, defect {:.1e}, pullback\n{}", conf.residual, conf.defect, conf.pullback);
    println!("            Σμ² = {:?}", quadric_polynomial(&su2, &real).coeffs);
    Ok(())
}
