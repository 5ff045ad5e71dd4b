//! Flows on `U x K`: vertical flows, the horizontal flow of `J_α X^#`
//! (whose base projections are geodesics), parallel transport and the
//! complexified action `ψ`.
//!
//! Horizontal lifts satisfy `k̇ = -A(ẋ) k`. Integration is classical RK4
//! with a fixed step, reprojecting `k` onto `K` after every step.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::{BundlePoint, GaugeChart, TangentVector};
use crate::lie::{AlgebraElement, CMatrix, ComplexAlgebraElement, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub step: f64,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { step: 1e-3, max_steps: 10_000_000 }
    }
}

impl IntegratorConfig {
    pub fn with_step(step: f64) -> Self {
        Self { step, ..Self::default() }
    }

    /// Number of equal steps covering `duration`.
    pub(crate) fn steps_for(&self, duration: f64) -> Result<usize> {
        if !(self.step >= 1e-14) {
            return Err(Error::StepUnderflow(self.step));
        }
        if !duration.is_finite() {
            return Err(Error::Invalid("non-finite integration time".into()));
        }
        let n = (duration.abs() / self.step).ceil() as usize;
        if n > self.max_steps {
            return Err(Error::TooManySteps(self.max_steps));
        }
        Ok(n)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowState {
    pub p: BundlePoint,
    pub t: f64,
}

type Velocity = (DVector<f64>, CMatrix);

impl GaugeChart {
    /// `φ^t_{X^#}(p) = p exp(tX)`.
    pub fn flow_vertical(&self, p: &BundlePoint, x: &AlgebraElement, t: f64) -> Result<BundlePoint> {
        self.check_bundle_point(p)?;
        let e = self.algebra().exp_real(&x.scale(t))?;
        Ok(BundlePoint::new(p.x.clone(), &p.k * &e))
    }

    fn ad_matrix_of(&self, k: &CMatrix, x: &AlgebraElement) -> Result<AlgebraElement> {
        let alg = self.algebra();
        let k_inv = k.clone().try_inverse().ok_or_else(|| Error::Numerical("singular fibre coordinate".into()))?;
        Ok(alg.decompose(&(k * alg.matrix_of(x)? * k_inv))?.re)
    }

    /// Base velocity of `J_α X^#` at `(x, k)`: `-α(x)^{-1}(Ad_k X)`.
    pub fn j_base_velocity(&self, p: &BundlePoint, x: &AlgebraElement) -> Result<DVector<f64>> {
        Ok(-self.solder_solve(&p.x, &self.ad_matrix_of(p.k.matrix(), x)?)?)
    }

    fn horizontal_rhs(&self, x: &[f64], k: &CMatrix, xdot: DVector<f64>) -> Result<Velocity> {
        let a = self.algebra().matrix_of(&self.connection_of(x, xdot.as_slice())?)?;
        Ok((xdot, -(a * k)))
    }

    fn j_rhs(&self, x: &[f64], k: &CMatrix, gen: &AlgebraElement) -> Result<Velocity> {
        let (connection, solder) = self.connection_and_solder(x)?;
        let xdot = -(self.frame_inverse(&solder)? * self.ad_matrix_of(k, gen)?.coeffs());
        let a = connection.iter().zip(xdot.iter()).fold(self.algebra().zero(), |acc, (a, u)| acc + a * *u);
        let a = self.algebra().matrix_of(&a)?;
        Ok((xdot, -(a * k)))
    }

    /// RK4 on `(x, k)` over `[0, duration]`, optionally recording every state.
    fn integrate<F>(&self, p: &BundlePoint, duration: f64, cfg: &IntegratorConfig, rhs: F, mut record: Option<&mut Vec<FlowState>>) -> Result<BundlePoint>
    where
        F: Fn(f64, &[f64], &CMatrix) -> Result<Velocity>,
    {
        let n = cfg.steps_for(duration)?;
        if let Some(r) = record.as_deref_mut() {
            r.push(FlowState { p: p.clone(), t: 0.0 });
        }
        if n == 0 {
            return Ok(p.clone());
        }
        let dt = duration / n as f64;
        let mut x = DVector::from_column_slice(&p.x);
        let mut k = p.k.matrix().clone();
        let c = |v: f64| Complex64::new(v, 0.0);
        for i in 0..n {
            let t = i as f64 * dt;
            let stage = |tt: f64, xs: &DVector<f64>, ks: &CMatrix| -> Result<Velocity> {
                if !self.domain().contains(xs.as_slice()) {
                    return Err(Error::ChartExit { t });
                }
                rhs(tt, xs.as_slice(), ks)
            };
            let (x1, k1) = stage(t, &x, &k)?;
            let (x2, k2) = stage(t + 0.5 * dt, &(&x + &x1 * (0.5 * dt)), &(&k + &k1 * c(0.5 * dt)))?;
            let (x3, k3) = stage(t + 0.5 * dt, &(&x + &x2 * (0.5 * dt)), &(&k + &k2 * c(0.5 * dt)))?;
            let (x4, k4) = stage(t + dt, &(&x + &x3 * dt), &(&k + &k3 * c(dt)))?;
            x += (x1 + x2 * 2.0 + x3 * 2.0 + x4) * (dt / 6.0);
            let dk = (k1 + k2 * c(2.0) + k3 * c(2.0) + k4) * c(dt / 6.0);
            k = self.algebra().project_compact(&(k + dk))?.matrix().clone();
            if !self.domain().contains(x.as_slice()) {
                return Err(Error::ChartExit { t: t + dt });
            }
            if let Some(r) = record.as_deref_mut() {
                r.push(FlowState { p: BundlePoint::new(x.as_slice().to_vec(), GroupElement::from_matrix(k.clone())), t: t + dt });
            }
        }
        Ok(BundlePoint::new(x.as_slice().to_vec(), GroupElement::from_matrix(k)))
    }

    /// `φ^t_{J_α X^#}(p)`.
    pub fn flow_horizontal_j(&self, p: &BundlePoint, x: &AlgebraElement, t: f64, cfg: &IntegratorConfig) -> Result<BundlePoint> {
        self.check_bundle_point(p)?;
        self.integrate(p, t, cfg, |_, xs, ks| self.j_rhs(xs, ks, x), None)
    }

    /// Same flow, returning every integrator state.
    pub fn flow_horizontal_j_trajectory(
        &self,
        p: &BundlePoint,
        x: &AlgebraElement,
        t: f64,
        cfg: &IntegratorConfig,
    ) -> Result<Vec<FlowState>> {
        self.check_bundle_point(p)?;
        let mut out = Vec::new();
        self.integrate(p, t, cfg, |_, xs, ks| self.j_rhs(xs, ks, x), Some(&mut out))?;
        Ok(out)
    }

    /// Generator `X` with `π_* J_α X^# = v` at `p`.
    pub fn geodesic_generator(&self, p: &BundlePoint, v: &DVector<f64>) -> Result<AlgebraElement> {
        if v.norm() == 0.0 {
            return Err(Error::Invalid("initial velocity must be nonzero".into()));
        }
        Ok(-self.solder_at(p, v)?)
    }

    /// Geodesic from `x` with initial velocity `v`, evaluated at time `t`.
    pub fn geodesic_shoot(&self, x: &[f64], v: &DVector<f64>, t: f64, cfg: &IntegratorConfig) -> Result<Vec<f64>> {
        let p = BundlePoint::new(x.to_vec(), self.algebra().identity()?);
        let gen = self.geodesic_generator(&p, v)?;
        Ok(self.flow_horizontal_j(&p, &gen, t, cfg)?.x)
    }

    /// Sampled geodesic together with its generator.
    pub fn geodesic_trajectory(
        &self,
        x: &[f64],
        v: &DVector<f64>,
        t: f64,
        cfg: &IntegratorConfig,
    ) -> Result<(AlgebraElement, Vec<FlowState>)> {
        let p = BundlePoint::new(x.to_vec(), self.algebra().identity()?);
        let gen = self.geodesic_generator(&p, v)?;
        Ok((gen.clone(), self.flow_horizontal_j_trajectory(&p, &gen, t, cfg)?))
    }

    /// Max of `‖σ̇ + [A(ċ), σ]‖` with `σ = α(ċ)`, by central differences over
    /// an evenly sampled trajectory of the flow generated by `gen`.
    pub fn geodesic_residual(&self, traj: &[FlowState], gen: &AlgebraElement) -> Result<f64> {
        if traj.len() < 3 {
            return Ok(0.0);
        }
        let alg = self.algebra();
        let mut sigma = Vec::with_capacity(traj.len());
        let mut bracket = Vec::with_capacity(traj.len());
        for s in traj {
            let cdot = self.j_base_velocity(&s.p, gen)?;
            let sig = self.solder_of(&s.p.x, cdot.as_slice())?;
            let a = self.connection_of(&s.p.x, cdot.as_slice())?;
            bracket.push(alg.br(&a, &sig));
            sigma.push(sig);
        }
        let mut worst = 0.0f64;
        for i in 1..traj.len() - 1 {
            let dt = traj[i + 1].t - traj[i - 1].t;
            let dsig = (&sigma[i + 1] - &sigma[i - 1]).scale(1.0 / dt);
            worst = worst.max(alg.norm(&(&dsig + &bracket[i])));
        }
        Ok(worst)
    }

    /// Max deviation of `g_α(ċ, ċ)` from its initial value.
    pub fn energy_drift(&self, traj: &[FlowState], gen: &AlgebraElement) -> Result<f64> {
        let mut e0 = None;
        let mut worst = 0.0f64;
        for s in traj {
            let cdot = self.j_base_velocity(&s.p, gen)?;
            let e = self.induced_metric(&s.p.x)?.inner(&cdot, &cdot);
            let base = *e0.get_or_insert(e);
            worst = worst.max((e - base).abs());
        }
        Ok(worst)
    }

    /// Fibre element reached by the horizontal lift of a polyline from `k = e`.
    pub fn holonomy(&self, path: &[Vec<f64>], cfg: &IntegratorConfig) -> Result<GroupElement> {
        let mut p = BundlePoint::new(path.first().ok_or(Error::Invalid("empty path".into()))?.clone(), self.algebra().identity()?);
        for pair in path.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            self.check_point(b)?;
            let dir = DVector::from_iterator(a.len(), b.iter().zip(a).map(|(u, v)| u - v));
            let len = dir.norm();
            if len == 0.0 {
                continue;
            }
            // the parameter runs over [0, len] at unit speed
            let unit = dir / len;
            p.x = a.clone();
            p = self.integrate(&p, len, cfg, |_, xs, ks| self.horizontal_rhs(xs, ks, unit.clone()), None)?;
        }
        Ok(p.k)
    }

    /// Parallel transport of `s ∈ ad(P)` along a polyline: `Ad_k s`.
    pub fn parallel_transport(&self, path: &[Vec<f64>], s: &AlgebraElement, cfg: &IntegratorConfig) -> Result<AlgebraElement> {
        let k = self.holonomy(path, cfg)?;
        self.ad(&k, s)
    }

    /// `ψ(p, k e^{iX}) = φ¹_{J_α X^#}(p k)`.
    pub fn complexified_action(&self, p: &BundlePoint, g: &GroupElement, cfg: &IntegratorConfig) -> Result<BundlePoint> {
        self.check_bundle_point(p)?;
        let (kg, x) = self.algebra().kp_decompose(g)?;
        let pk = BundlePoint::new(p.x.clone(), self.algebra().project_compact(&(p.k.matrix() * kg.matrix()))?);
        self.flow_horizontal_j(&pk, &x, 1.0, cfg)
    }

    /// Tangent vector of the forward difference `(q - p)/h`.
    pub fn difference_quotient(&self, p: &BundlePoint, q: &BundlePoint, h: f64) -> Result<TangentVector> {
        let xdot = DVector::from_iterator(p.x.len(), q.x.iter().zip(&p.x).map(|(a, b)| (a - b) / h));
        let kinv = p.k.inverse()?;
        let body = self.algebra().decompose(&(kinv.matrix() * (q.k.matrix() - p.k.matrix()) / Complex64::new(h, 0.0)))?.re;
        self.from_body_velocity(p, &xdot, &body)
    }

    /// Forward-difference errors of `ψ_{*,e}(X) = X^#` and `ψ_{*,e}(iX) = J_α X^#`.
    pub fn psi_derivative_check(&self, p: &BundlePoint, x: &AlgebraElement, h: f64, cfg: &IntegratorConfig) -> Result<(f64, f64)> {
        let alg = self.algebra();
        let real = alg.exp_matrix(&ComplexAlgebraElement::real(x.scale(h)))?;
        let imag = alg.exp_matrix(&ComplexAlgebraElement::imaginary(x.scale(h)))?;
        let q1 = self.complexified_action(p, &real, cfg)?;
        let q2 = self.complexified_action(p, &imag, cfg)?;
        let e1 = (&self.difference_quotient(p, &q1, h)? - &TangentVector::fundamental(x.clone(), self.base_dim())).norm();
        let e2 = (&self.difference_quotient(p, &q2, h)? - &self.j_fundamental(p, x)?).norm();
        Ok((e1, e2))
    }
}
