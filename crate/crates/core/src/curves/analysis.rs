//! Pointwise invariants of a form `η = μ dz`: the type-(1,0) condition,
//! the projectivised point `[μ̃(z₀)]`, conformality and the quadric
//! `Σ μ_i² = 0`.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::Serialize;

use crate::curves::CurveForm;
use crate::error::{Error, Result};
use crate::lie::{ComplexAlgebraElement, LieAlgebra};
use crate::poly::{taylor_shift, ComplexPoly};

/// `‖η(∂_y) - i η(∂_x)‖` for a form given by its action on real tangent
/// vectors at one point.
pub fn type10_residual<F>(alg: &LieAlgebra, eta: F) -> f64
where
    F: Fn(f64, f64) -> ComplexAlgebraElement,
{
    let ex = eta(1.0, 0.0);
    let ey = eta(0.0, 1.0);
    alg.norm_complex(&(&ey - &ex.times_i()))
}

/// Unit representative of `[μ̃(z₀)]` in `P(g_C)` together with the
/// vanishing order `k` of `μ` at `z₀`, where `μ = (z - z₀)^k μ̃`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectivePoint {
    pub coords: Vec<Complex64>,
    pub order: usize,
}

impl ProjectivePoint {
    /// Sine of the angle between the lines, `‖a ∧ b‖`, which keeps full
    /// precision near zero unlike `sqrt(1 - |⟨a, b⟩|²)`.
    pub fn distance(&self, other: &ProjectivePoint) -> f64 {
        let (a, b) = (&self.coords, &other.coords);
        let mut sum = 0.0;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                sum += (a[i] * b[j] - a[j] * b[i]).norm_sqr();
            }
        }
        sum.sqrt()
    }
}

/// Coefficients below this fraction of the largest one count as zero.
pub const VANISHING_TOL: f64 = 1e-13;

pub fn projectivize(eta: &CurveForm, z0: Complex64) -> Result<ProjectivePoint> {
    let coeffs: Vec<Vec<Complex64>> = eta.coefficients().iter().map(|c| c.complex_coeffs()).collect();
    let shifted = taylor_shift(&coeffs, z0);
    let norm = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let scale = shifted.iter().map(|v| norm(v)).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::ZeroForm);
    }
    let (order, lead) = shifted
        .iter()
        .enumerate()
        .find(|(_, v)| norm(v) > VANISHING_TOL * scale)
        .ok_or(Error::ZeroForm)?;
    let n = norm(lead);
    // fix the phase so the first entry of maximal modulus is real positive
    let top = lead.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let pivot = lead.iter().find(|c| c.norm() >= top * (1.0 - 1e-9)).expect("non-empty");
    let phase = pivot.conj() / pivot.norm();
    Ok(ProjectivePoint { coords: lead.iter().map(|c| c * phase / n).collect(), order })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Conformality {
    /// `|Im ⟨μ, μ̄⟩|`, the defect in the `(∂_x, ∂_y)` off-diagonal convention
    /// where `μ` is a single complex direction.
    pub residual: f64,
    /// Pullback of the metric under `Im η` in the basis `(∂_x, ∂_y)`.
    pub pullback: Matrix2<f64>,
    /// `|Σ μ_i²|`: vanishes exactly when `pullback` is a multiple of the identity.
    pub defect: f64,
}

impl Conformality {
    pub fn is_conformal(&self, tol: f64) -> bool {
        self.defect <= tol
    }
}

/// Conformality of `Im η` at `z`. The pullback of `⟨·,·⟩` under
/// `u ↦ Im(μ (u_x + i u_y))` has entries `|Im μ|²`, `|Re μ|²` and
/// `⟨Im μ, Re μ⟩`, and `Σ μ_i² = |Re μ|² - |Im μ|² + 2i ⟨Re μ, Im μ⟩`.
pub fn conformality(alg: &LieAlgebra, eta: &CurveForm, z: Complex64) -> Conformality {
    let mu = eta.mu(z);
    let (re, im) = (&mu.re, &mu.im);
    let (xx, yy, xy) = (alg.ip(im, im), alg.ip(re, re), alg.ip(im, re));
    let pullback = Matrix2::new(xx, xy, xy, yy);
    Conformality {
        residual: alg.inner_hermitian(&mu, &mu.conj()).im.abs(),
        pullback,
        defect: alg.bilinear_complex(&mu, &mu).norm(),
    }
}

/// `Σ μ_i(z)²` as a polynomial in `z`, evaluated coefficientwise.
pub fn quadric_polynomial(alg: &LieAlgebra, eta: &CurveForm) -> ComplexPoly {
    let c = eta.coefficients();
    let n = c.len();
    let coeffs = (0..2 * n - 1)
        .map(|m| {
            (m.saturating_sub(n - 1)..=m.min(n - 1)).map(|j| alg.bilinear_complex(&c[j], &c[m - j])).sum()
        })
        .collect();
    ComplexPoly::new(coeffs)
}

/// Largest coefficient of [`quadric_polynomial`].
pub fn quadric_residual(alg: &LieAlgebra, eta: &CurveForm) -> f64 {
    quadric_polynomial(alg, eta).max_coeff()
}
