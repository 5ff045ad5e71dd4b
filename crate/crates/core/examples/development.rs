//! Developing holomorphic forms `η = μ dz` into the complex group and
//! reconstructing the curve `f(z) = ψ(p₀, g_τ(1))`.

use num_complex::Complex64;
use jalpha::curves::{complex_element, develop, develop_scalar_closed_form, reconstruct_f, CurveForm, DevelopConfig, Path, Surface};
use jalpha::gauge::BundlePoint;
use jalpha::models::build_homogeneous_sample;
use jalpha::poly::ComplexPoly;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> jalpha::Result<()> {
    let sample = build_homogeneous_sample("su2")?;
    let alg = sample.algebra().clone();
    let cfg = DevelopConfig::default();
    let disc = Surface::Disc { center: c(0.0, 0.0), radius: 1.0 };

    // scalar type: η = Z ζ develops to exp(Z ∫ζ)
    let z = complex_element(&[0.4, -0.1, 0.2], &[0.0, 0.3, -0.2]);
    let scalar = CurveForm::scalar(z, ComplexPoly::new(vec![c(1.0, 0.0), c(0.0, 0.5)]), disc.clone())?;
    let path = Path::new(vec![c(0.0, 0.0), c(0.5, 0.2), c(0.3, 0.6)]);
    let numeric = develop(&alg, &scalar, &path, &cfg)?;
    let exact = develop_scalar_closed_form(&alg, &scalar, &path)?.expect("scalar form");
    println!("scalar type: |develop - exp(Z∫ζ)| = {:.2e}", numeric.distance(&exact));

    // a nonabelian form: concatenation multiplies on the right
    let eta = CurveForm::polynomial(
        vec![complex_element(&[0.0, 0.8, 0.0], &[0.1, 0.0, 0.0]), complex_element(&[0.6, 0.0, 0.0], &[0.0, 0.0, 0.4])],
        disc,
    )?;
    let a = Path::segment(c(0.0, 0.0), c(0.6, 0.0));
    let b = Path::segment(c(0.6, 0.0), c(0.6, 0.5));
    let whole = develop(&alg, &eta, &a.then(&b)?, &cfg)?;
    let split = &develop(&alg, &eta, &a, &cfg)? * &develop(&alg, &eta, &b, &cfg)?;
    println!("two segments: |g(a·b) - g(a) g(b)| = {:.2e}", whole.distance(&split));

    // homotopic routes reach the same point of the bundle
    let p0 = BundlePoint::new(vec![0.0; 3], alg.identity()?);
    let direct = reconstruct_f(&sample.chart, &p0, &eta, &Path::segment(c(0.0, 0.0), c(0.6, 0.5)), &cfg)?;
    let around = reconstruct_f(&sample.chart, &p0, &eta, &a.then(&b)?, &cfg)?;
    println!("f(0.6 + 0.5i) = x {:?}", direct.x.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>());
    println!("route disagreement = {:.2e}", direct.distance(&around));
    Ok(())
}
