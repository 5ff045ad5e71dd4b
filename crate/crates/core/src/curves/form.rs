//! Holomorphic `g`-valued forms `η = μ(z) dz` on domains in `C`, and their
//! development `ġ = g η(τ̇)` along paths.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::IntegratorConfig;
use crate::error::{Error, Result};
use crate::gauge::{BundlePoint, GaugeChart};
use crate::lie::{AlgebraElement, CMatrix, ComplexAlgebraElement, GroupElement, LieAlgebra};
use crate::poly::ComplexPoly;

#[derive(Clone, Debug, PartialEq)]
pub enum FormKind {
    /// `μ(z) = Σ_j c_j z^j`.
    Polynomial { coeffs: Vec<ComplexAlgebraElement> },
    /// `η = Z · ζ` with `ζ = h(z) dz`.
    Scalar { z: ComplexAlgebraElement, zeta: ComplexPoly },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Surface {
    Disc { center: Complex64, radius: f64 },
    /// `C / (Z + τZ)`, `Im τ > 0`.
    Torus { tau: Complex64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveForm {
    pub kind: FormKind,
    pub surface: Surface,
}

impl CurveForm {
    pub fn polynomial(coeffs: Vec<ComplexAlgebraElement>, surface: Surface) -> Result<Self> {
        Self::checked(FormKind::Polynomial { coeffs }, surface)
    }

    pub fn scalar(z: ComplexAlgebraElement, zeta: ComplexPoly, surface: Surface) -> Result<Self> {
        Self::checked(FormKind::Scalar { z, zeta }, surface)
    }

    fn checked(kind: FormKind, surface: Surface) -> Result<Self> {
        let degree = match &kind {
            FormKind::Polynomial { coeffs } => {
                if coeffs.is_empty() {
                    return Err(Error::Invalid("polynomial form needs at least one coefficient".into()));
                }
                let d = coeffs[0].dim();
                if coeffs.iter().any(|c| c.dim() != d) {
                    return Err(Error::Invalid("coefficients disagree in dimension".into()));
                }
                coeffs.len()
            }
            FormKind::Scalar { zeta, .. } => zeta.coeffs.len(),
        };
        match surface {
            Surface::Torus { tau } if !(tau.im > 0.0) => {
                return Err(Error::Invalid("torus modulus needs Im τ > 0".into()));
            }
            // doubly periodic polynomials are constant
            Surface::Torus { .. } if degree > 1 => {
                return Err(Error::Invalid("forms on a torus must have constant coefficients".into()));
            }
            Surface::Disc { radius, .. } if !(radius > 0.0) => {
                return Err(Error::Invalid("disc radius must be positive".into()));
            }
            _ => {}
        }
        Ok(Self { kind, surface })
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            FormKind::Polynomial { coeffs } => coeffs[0].dim(),
            FormKind::Scalar { z, .. } => z.dim(),
        }
    }

    /// Coefficients of `μ` in powers of `z`.
    pub fn coefficients(&self) -> Vec<ComplexAlgebraElement> {
        match &self.kind {
            FormKind::Polynomial { coeffs } => coeffs.clone(),
            FormKind::Scalar { z, zeta } => zeta.coeffs.iter().map(|h| z.scale(*h)).collect(),
        }
    }

    /// `μ(z)`.
    pub fn mu(&self, at: Complex64) -> ComplexAlgebraElement {
        match &self.kind {
            FormKind::Polynomial { coeffs } => {
                let mut acc = ComplexAlgebraElement::zeros(coeffs[0].dim());
                for c in coeffs.iter().rev() {
                    acc = &acc.scale(at) + c;
                }
                acc
            }
            FormKind::Scalar { z, zeta } => z.scale(zeta.eval(at)),
        }
    }

    /// `η(u)` for the real tangent vector `u = (u_x, u_y)` at `z`.
    pub fn eval(&self, at: Complex64, u: (f64, f64)) -> ComplexAlgebraElement {
        self.mu(at).scale(Complex64::new(u.0, u.1))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|c| c.coeff_norm() == 0.0)
    }
}

/// Polyline in `C`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Path {
    pub points: Vec<Complex64>,
}

impl Path {
    pub fn new(points: Vec<Complex64>) -> Self {
        Self { points }
    }

    pub fn segment(a: Complex64, b: Complex64) -> Self {
        Self { points: vec![a, b] }
    }

    pub fn start(&self) -> Option<Complex64> {
        self.points.first().copied()
    }

    pub fn end(&self) -> Option<Complex64> {
        self.points.last().copied()
    }

    pub fn reversed(&self) -> Self {
        Self { points: self.points.iter().rev().copied().collect() }
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn then(&self, other: &Path) -> Result<Self> {
        match (self.end(), other.start()) {
            (Some(a), Some(b)) if (a - b).norm() <= 1e-12 * (1.0 + a.norm()) => {
                let mut points = self.points.clone();
                points.extend(other.points.iter().skip(1));
                Ok(Self { points })
            }
            (None, _) => Ok(other.clone()),
            (_, None) => Ok(self.clone()),
            _ => Err(Error::Invalid("paths do not join".into())),
        }
    }

    /// `∫ ζ` along the path for a polynomial `ζ = h dz`.
    pub fn integrate(&self, zeta: &ComplexPoly) -> Complex64 {
        match (self.start(), self.end()) {
            (Some(a), Some(b)) => zeta.integral(a, b),
            _ => Complex64::new(0.0, 0.0),
        }
    }
}

/// Settings for [`develop`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DevelopConfig {
    pub integrator: IntegratorConfig,
    /// Abort once `‖g‖_F` exceeds this.
    pub max_norm: f64,
}

impl Default for DevelopConfig {
    fn default() -> Self {
        Self { integrator: IntegratorConfig::with_step(1e-3), max_norm: 1e12 }
    }
}

/// Solves `ġ = g · η(τ̇)`, `g(0) = 1`, along the path and returns the
/// endpoint value. Concatenation multiplies on the right:
/// `develop(τ₁ then τ₂) = develop(τ₁) · develop(τ₂)`.
pub fn develop(alg: &LieAlgebra, eta: &CurveForm, path: &Path, cfg: &DevelopConfig) -> Result<GroupElement> {
    if eta.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: eta.dim() });
    }
    let n = alg.rep_size()?;
    let mut g = CMatrix::identity(n, n);
    let rhs = |z: Complex64, zdot: Complex64, g: &CMatrix| -> Result<CMatrix> {
        Ok(g * alg.matrix_of_complex(&eta.mu(z).scale(zdot))?)
    };
    for pair in path.points.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let zdot = b - a;
        let steps = cfg.integrator.steps_for(zdot.norm())?;
        if steps == 0 {
            continue;
        }
        let ds = 1.0 / steps as f64;
        let c = |v: f64| Complex64::new(v, 0.0);
        for i in 0..steps {
            let s = i as f64 * ds;
            let z = |t: f64| a + zdot * t;
            let k1 = rhs(z(s), zdot, &g)?;
            let k2 = rhs(z(s + 0.5 * ds), zdot, &(&g + &k1 * c(0.5 * ds)))?;
            let k3 = rhs(z(s + 0.5 * ds), zdot, &(&g + &k2 * c(0.5 * ds)))?;
            let k4 = rhs(z(s + ds), zdot, &(&g + &k3 * c(ds)))?;
            g += (k1 + k2 * c(2.0) + k3 * c(2.0) + k4) * c(ds / 6.0);
            let size = g.norm();
            if !(size <= cfg.max_norm) {
                return Err(Error::BlowUp(size));
            }
        }
    }
    Ok(GroupElement::from_matrix(g))
}

/// `exp(Z · ∫ζ)` for a scalar-type form; `None` for polynomial forms.
pub fn develop_scalar_closed_form(alg: &LieAlgebra, eta: &CurveForm, path: &Path) -> Result<Option<GroupElement>> {
    match &eta.kind {
        FormKind::Scalar { z, zeta } => Ok(Some(alg.exp_matrix(&z.scale(path.integrate(zeta)))?)),
        FormKind::Polynomial { .. } => Ok(None),
    }
}

/// `f(z) = ψ(p₀, g_τ(1))` for a path `τ` from the base point to `z`.
pub fn reconstruct_f(
    chart: &GaugeChart,
    p0: &BundlePoint,
    eta: &CurveForm,
    path: &Path,
    cfg: &DevelopConfig,
) -> Result<BundlePoint> {
    let g = develop(chart.algebra(), eta, path, cfg)?;
    chart.complexified_action(p0, &g, &cfg.integrator)
}

/// `‖f_a(z) - f_b(z)‖` for two routes to the same point. The routes agree
/// when the loop `a · b⁻¹` develops into the stabiliser of `p₀`.
pub fn route_disagreement(
    chart: &GaugeChart,
    p0: &BundlePoint,
    eta: &CurveForm,
    a: &Path,
    b: &Path,
    cfg: &DevelopConfig,
) -> Result<f64> {
    let fa = reconstruct_f(chart, p0, eta, a, cfg)?;
    let fb = reconstruct_f(chart, p0, eta, b, cfg)?;
    Ok(fa.distance(&fb))
}

/// Element of `g` with the given real and imaginary coefficient lists.
pub fn complex_element(re: &[f64], im: &[f64]) -> ComplexAlgebraElement {
    ComplexAlgebraElement::new(AlgebraElement::new(re.to_vec()), AlgebraElement::new(im.to_vec()))
}
