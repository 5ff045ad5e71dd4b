//! Geometry induced on the base: metric `g_α`, torsion, curvature.
//! Everything is routed through `α` and the Lie algebra; the metric is
//! never differentiated.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauge::GaugeChart;
use crate::lie::AlgebraElement;

/// `g_α` at a point, `g[μ][ν] = ⟨α_μ, α_ν⟩`.
#[derive(Clone, Debug, Serialize)]
pub struct MetricSample {
    pub x: Vec<f64>,
    pub g_matrix: DMatrix<f64>,
}

impl MetricSample {
    pub fn inner(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        u.dot(&(&self.g_matrix * v))
    }
}

impl GaugeChart {
    pub fn induced_metric(&self, x: &[f64]) -> Result<MetricSample> {
        self.solder_inverse(x)?;
        let s = self.solder(x)?;
        let alg = self.algebra();
        let n = s.len();
        let g_matrix = DMatrix::from_fn(n, n, |mu, nu| alg.ip(&s[mu], &s[nu]));
        Ok(MetricSample { x: x.to_vec(), g_matrix })
    }

    /// `α^{-1}((d_A α)(u, v))`.
    pub fn torsion(&self, x: &[f64], u: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>> {
        let d = self.covariant_d_alpha(x)?.eval(u.as_slice(), v.as_slice());
        self.solder_solve(x, &d)
    }

    /// `α^{-1}([[α u, α v], α w])`, offered only where the integrability
    /// residuals are below `tol` unless `force` is set.
    pub fn riemann_curvature(
        &self,
        x: &[f64],
        u: &DVector<f64>,
        v: &DVector<f64>,
        w: &DVector<f64>,
        tol: f64,
        force: bool,
    ) -> Result<DVector<f64>> {
        if !force {
            let r = self.integrability_residuals(x)?;
            if r.max() > tol {
                return Err(Error::NotIntegrable { r1: r.r1, r2: r.r2, tol });
            }
        }
        let alg = self.algebra();
        let (au, av, aw) = (self.solder_of(x, u.as_slice())?, self.solder_of(x, v.as_slice())?, self.solder_of(x, w.as_slice())?);
        let nested = alg.br(&alg.br(&au, &av), &aw);
        self.solder_solve(x, &nested)
    }

    /// `-‖[α u', α v']‖²` for the `g_α`-orthonormalised pair `(u', v')`.
    pub fn sectional_curvature(&self, x: &[f64], u: &DVector<f64>, v: &DVector<f64>) -> Result<f64> {
        let g = self.induced_metric(x)?;
        let nu = g.inner(u, u).sqrt();
        if !(nu > 0.0) {
            return Err(Error::Degenerate);
        }
        let e1 = u / nu;
        let rest = v - &e1 * g.inner(&e1, v);
        let nr = g.inner(&rest, &rest).sqrt();
        if !(nr > 1e-12 * g.inner(v, v).sqrt()) {
            return Err(Error::Degenerate);
        }
        let e2 = rest / nr;
        let alg = self.algebra();
        let b = alg.br(&self.solder_of(x, e1.as_slice())?, &self.solder_of(x, e2.as_slice())?);
        Ok(-alg.ip(&b, &b))
    }

    /// `[F_A(u, v), s]`: curvature of the induced connection on `ad(P)`.
    pub fn induced_curvature_operator(
        &self,
        x: &[f64],
        u: &DVector<f64>,
        v: &DVector<f64>,
        s: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        let f = self.curvature(x)?.eval(u.as_slice(), v.as_slice());
        self.algebra().bracket(&f, s)
    }

    /// `Γ^λ_{μν}` of the pulled-back connection, `α^{-1}(∂_μ α_ν + [A_μ, α_ν])`,
    /// indexed `[λ][μ][ν]`: `∇_{∂_μ} ∂_ν = Γ^λ_{μν} ∂_λ`.
    pub fn connection_coefficients(&self, x: &[f64]) -> Result<Vec<DMatrix<f64>>> {
        let local = self.local_fields(x)?;
        let inv = self.solder_inverse(x)?;
        let alg = self.algebra();
        let n = self.base_dim();
        let mut gamma = vec![DMatrix::zeros(n, n); n];
        for mu in 0..n {
            for nu in 0..n {
                let cov = &local.derivatives.solder[mu][nu] + &alg.br(&local.connection[mu], &local.solder[nu]);
                let c = &inv * cov.coeffs();
                for (lambda, g) in gamma.iter_mut().enumerate() {
                    g[(mu, nu)] = c[lambda];
                }
            }
        }
        Ok(gamma)
    }
}
