//! Points and tangent vectors of `U x K`, the almost complex structure
//! `J_α` and the complex form `ω`.
//!
//! Conventions: the section is `s(x) = (x, e)`, the right action is
//! `(x, k)·g = (x, kg)`, and a raw velocity `(ẋ, k̇)` has connection
//! component `ω_A = Ad_{k^{-1}} A(ẋ) + k^{-1} k̇`.

use std::ops::{Add, Sub};

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::gauge::chart::GaugeChart;
use crate::lie::{AlgebraElement, ComplexAlgebraElement, GroupElement};

#[derive(Clone, Debug, PartialEq)]
pub struct BundlePoint {
    pub x: Vec<f64>,
    pub k: GroupElement,
}

impl BundlePoint {
    pub fn new(x: Vec<f64>, k: GroupElement) -> Self {
        Self { x, k }
    }

    /// Distance used for comparing trajectories: Euclidean in `x` plus
    /// Frobenius in `k`.
    pub fn distance(&self, other: &Self) -> f64 {
        let dx: f64 = self.x.iter().zip(&other.x).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        dx + self.k.distance(&other.k)
    }
}

/// Tangent vector split along `TP = A ⊕ V`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector {
    /// Base coordinates of the horizontal part.
    pub horizontal: DVector<f64>,
    /// The `X` whose fundamental field is the vertical part.
    pub vertical: AlgebraElement,
}

impl TangentVector {
    pub fn new(horizontal: DVector<f64>, vertical: AlgebraElement) -> Self {
        Self { horizontal, vertical }
    }

    pub fn fundamental(x: AlgebraElement, base_dim: usize) -> Self {
        Self { horizontal: DVector::zeros(base_dim), vertical: x }
    }

    pub fn horizontal_lift(h: DVector<f64>, alg_dim: usize) -> Self {
        Self { horizontal: h, vertical: AlgebraElement::zeros(alg_dim) }
    }

    pub fn zeros(base_dim: usize, alg_dim: usize) -> Self {
        Self { horizontal: DVector::zeros(base_dim), vertical: AlgebraElement::zeros(alg_dim) }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { horizontal: &self.horizontal * s, vertical: self.vertical.scale(s) }
    }

    /// Euclidean norm of the coefficient vector `(h, X)`.
    pub fn norm(&self) -> f64 {
        (self.horizontal.norm_squared() + self.vertical.coeff_norm().powi(2)).sqrt()
    }
}

impl Add for &TangentVector {
    type Output = TangentVector;
    fn add(self, rhs: &TangentVector) -> TangentVector {
        TangentVector { horizontal: &self.horizontal + &rhs.horizontal, vertical: &self.vertical + &rhs.vertical }
    }
}

impl Sub for &TangentVector {
    type Output = TangentVector;
    fn sub(self, rhs: &TangentVector) -> TangentVector {
        TangentVector { horizontal: &self.horizontal - &rhs.horizontal, vertical: &self.vertical - &rhs.vertical }
    }
}

impl GaugeChart {
    pub fn check_bundle_point(&self, p: &BundlePoint) -> Result<()> {
        self.check_point(&p.x)?;
        self.algebra().check_compact(&p.k)
    }

    /// `Ad_k X` without a membership check (callers validate `k`).
    pub(crate) fn ad(&self, k: &GroupElement, x: &AlgebraElement) -> Result<AlgebraElement> {
        Ok(AlgebraElement::from_vector(self.algebra().adjoint_matrix(k)? * x.coeffs()))
    }

    pub(crate) fn ad_inv(&self, k: &GroupElement, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.ad(&k.inverse()?, x)
    }

    /// `α_p(v)`: the tensorial form evaluated on the horizontal part.
    pub fn solder_at(&self, p: &BundlePoint, h: &DVector<f64>) -> Result<AlgebraElement> {
        self.ad_inv(&p.k, &self.solder_of(&p.x, h.as_slice())?)
    }

    /// Horizontal vector `u` with `α_p(u) = y`.
    pub fn solder_inverse_at(&self, p: &BundlePoint, y: &AlgebraElement) -> Result<DVector<f64>> {
        self.solder_solve(&p.x, &self.ad(&p.k, y)?)
    }

    /// `J_α = (0, -α^{-1}; α, 0)` in the `A ⊕ V` splitting.
    pub fn apply_j(&self, p: &BundlePoint, v: &TangentVector) -> Result<TangentVector> {
        self.check_bundle_point(p)?;
        self.apply_j_unchecked(p, v)
    }

    pub(crate) fn apply_j_unchecked(&self, p: &BundlePoint, v: &TangentVector) -> Result<TangentVector> {
        if v.horizontal.len() != self.base_dim() {
            return Err(Error::DimensionMismatch { expected: self.base_dim(), found: v.horizontal.len() });
        }
        let horizontal = -self.solder_inverse_at(p, &v.vertical)?;
        let vertical = self.solder_at(p, &v.horizontal)?;
        Ok(TangentVector { horizontal, vertical })
    }

    /// `J_α X^#`, horizontal with base part `-α_p^{-1}(X)`.
    pub fn j_fundamental(&self, p: &BundlePoint, x: &AlgebraElement) -> Result<TangentVector> {
        self.apply_j(p, &TangentVector::fundamental(x.clone(), self.base_dim()))
    }

    /// Split a raw velocity `(ẋ, k^{-1} k̇)` into horizontal and vertical parts.
    pub fn from_body_velocity(&self, p: &BundlePoint, xdot: &DVector<f64>, body: &AlgebraElement) -> Result<TangentVector> {
        let a = self.connection_of(&p.x, xdot.as_slice())?;
        Ok(TangentVector { horizontal: xdot.clone(), vertical: &self.ad_inv(&p.k, &a)? + body })
    }

    /// Inverse of [`GaugeChart::from_body_velocity`]: returns `k^{-1} k̇`.
    pub fn body_velocity(&self, p: &BundlePoint, v: &TangentVector) -> Result<AlgebraElement> {
        let a = self.connection_of(&p.x, v.horizontal.as_slice())?;
        Ok(&v.vertical - &self.ad_inv(&p.k, &a)?)
    }

    /// `ω(v) = ω_A(v) - i α(v)`: the form with `Re ω = ω_A` and `ω ∘ J = iω`.
    pub fn omega(&self, p: &BundlePoint, v: &TangentVector) -> Result<ComplexAlgebraElement> {
        self.check_bundle_point(p)?;
        let alpha = self.solder_at(p, &v.horizontal)?;
        Ok(ComplexAlgebraElement::new(v.vertical.clone(), -alpha))
    }

    /// `|ω(v)|`: the norm for which `J_α` is an isometry, independent of
    /// the coordinate scale of the chart.
    pub fn tangent_norm(&self, p: &BundlePoint, v: &TangentVector) -> Result<f64> {
        let alg = self.algebra();
        let alpha = self.solder_at(p, &v.horizontal)?;
        Ok((alg.ip(&alpha, &alpha) + alg.ip(&v.vertical, &v.vertical)).sqrt())
    }

    /// Tangent vector `v` with `ω(v) = xi`.
    pub fn omega_inverse(&self, p: &BundlePoint, xi: &ComplexAlgebraElement) -> Result<TangentVector> {
        self.check_bundle_point(p)?;
        let horizontal = -self.solder_inverse_at(p, &xi.im)?;
        Ok(TangentVector { horizontal, vertical: xi.re.clone() })
    }
}
