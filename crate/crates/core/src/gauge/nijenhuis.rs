//! The Nijenhuis tensor of `J_α`: closed form on fundamental fields, and a
//! finite-difference evaluation of the defining vector-field brackets.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::gauge::bundle::{BundlePoint, TangentVector};
use crate::gauge::chart::GaugeChart;
use crate::lie::AlgebraElement;

/// Vector fields on `U x K` that enter the Nijenhuis tensor.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    /// The fundamental field `X^#`.
    Fundamental(AlgebraElement),
    /// The horizontal field `J_α X^#`.
    JFundamental(AlgebraElement),
}

/// `[(1 - e^{-ad}) / ad]^{-1}` at `ξ`: converts body velocity into the
/// velocity of exponential coordinates `k = k0 exp(ξ)`.
fn exp_coordinate_map(ad: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let d = ad.nrows();
    let mut sum = DMatrix::identity(d, d);
    let mut term = DMatrix::identity(d, d);
    for m in 1..40 {
        term = &term * ad * (-1.0 / (m as f64 + 1.0));
        sum += &term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    sum.try_inverse().ok_or_else(|| Error::Numerical("exponential chart is singular".into()))
}

impl GaugeChart {
    /// `N(X^#, Y^#)`: horizontal part `-α^{-1}((d_Aα)(α^{-1}X, α^{-1}Y))` and
    /// vertical part `[X, Y] - F_A(α^{-1}X, α^{-1}Y)`.
    pub fn nijenhuis_closed_form(&self, p: &BundlePoint, x: &AlgebraElement, y: &AlgebraElement) -> Result<TangentVector> {
        self.check_bundle_point(p)?;
        let alg = self.algebra();
        let local = self.local_fields(&p.x)?;
        let hu = self.solder_inverse_at(p, x)?;
        let hv = self.solder_inverse_at(p, y)?;
        let da = local.covariant_d_alpha(alg).eval(hu.as_slice(), hv.as_slice());
        let f = local.curvature(alg).eval(hu.as_slice(), hv.as_slice());
        let horizontal = -self.solder_solve(&p.x, &da)?;
        let vertical = &alg.bracket(x, y)? - &self.ad_inv(&p.k, &f)?;
        Ok(TangentVector { horizontal, vertical })
    }

    /// `N(u, v)` for arbitrary tangent vectors, extended from fundamental
    /// fields by `u = U^# + J W^#` and `N(JA, B) = N(A, JB) = -J N(A, B)`.
    pub fn nijenhuis_tensor(&self, p: &BundlePoint, u: &TangentVector, v: &TangentVector) -> Result<TangentVector> {
        self.check_bundle_point(p)?;
        let (u1, w1) = (u.vertical.clone(), -self.solder_at(p, &u.horizontal)?);
        let (u2, w2) = (v.vertical.clone(), -self.solder_at(p, &v.horizontal)?);
        let n_uu = self.nijenhuis_closed_form(p, &u1, &u2)?;
        let n_wu = self.nijenhuis_closed_form(p, &w1, &u2)?;
        let n_uw = self.nijenhuis_closed_form(p, &u1, &w2)?;
        let n_ww = self.nijenhuis_closed_form(p, &w1, &w2)?;
        let mixed = self.apply_j_unchecked(p, &(&n_wu + &n_uw))?;
        Ok(&(&n_uu - &mixed) - &n_ww)
    }

    /// Components `(ẋ, ξ̇)` of a field in the coordinates `(x, ξ)`, `k = k0 exp(ξ)`.
    fn field_components(&self, k0: &BundlePoint, spec: &FieldSpec, q: &DVector<f64>) -> Result<DVector<f64>> {
        let n = self.base_dim();
        let alg = self.algebra();
        let x: Vec<f64> = q.rows(0, n).iter().copied().collect();
        let xi = AlgebraElement::from_vector(q.rows(n, alg.dim()).into_owned());
        let k = &k0.k * &alg.exp_real(&xi)?;
        let point = BundlePoint::new(x, k);
        let (xdot, body) = match spec {
            FieldSpec::Fundamental(v) => (DVector::zeros(n), v.clone()),
            FieldSpec::JFundamental(v) => {
                let h = -self.solder_inverse_at(&point, v)?;
                let body = -self.ad_inv(&point.k, &self.connection_of(&point.x, h.as_slice())?)?;
                (h, body)
            }
        };
        let xi_dot = exp_coordinate_map(&alg.ad_matrix(&xi))? * body.coeffs();
        let mut out = DVector::zeros(n + alg.dim());
        out.rows_mut(0, n).copy_from(&xdot);
        out.rows_mut(n, alg.dim()).copy_from(&xi_dot);
        Ok(out)
    }

    /// Lie bracket `[a, b]` of two fields at `p`, from central differences with step `h`.
    pub fn vector_field_bracket(&self, p: &BundlePoint, a: &FieldSpec, b: &FieldSpec, h: f64) -> Result<TangentVector> {
        self.check_bundle_point(p)?;
        if !(h > 0.0) {
            return Err(Error::Invalid("difference step must be positive".into()));
        }
        let n = self.base_dim();
        let d = self.algebra().dim();
        let mut q0 = DVector::zeros(n + d);
        q0.rows_mut(0, n).copy_from_slice(&p.x);
        let va = self.field_components(p, a, &q0)?;
        let vb = self.field_components(p, b, &q0)?;
        let directional = |spec: &FieldSpec, dir: &DVector<f64>| -> Result<DVector<f64>> {
            let plus = self.field_components(p, spec, &(&q0 + dir * h))?;
            let minus = self.field_components(p, spec, &(&q0 - dir * h))?;
            Ok((plus - minus) / (2.0 * h))
        };
        let bracket = directional(b, &va)? - directional(a, &vb)?;
        let xdot = bracket.rows(0, n).into_owned();
        let body = AlgebraElement::from_vector(bracket.rows(n, d).into_owned());
        self.from_body_velocity(p, &xdot, &body)
    }

    /// `N = [JX, JY] - [X, Y] - J[X, JY] - J[JX, Y]` on `X^#, Y^#`, every
    /// bracket evaluated numerically.
    pub fn nijenhuis_numeric(&self, p: &BundlePoint, x: &AlgebraElement, y: &AlgebraElement, h: f64) -> Result<TangentVector> {
        use FieldSpec::*;
        let (fx, fy) = (Fundamental(x.clone()), Fundamental(y.clone()));
        let (jx, jy) = (JFundamental(x.clone()), JFundamental(y.clone()));
        let b_jj = self.vector_field_bracket(p, &jx, &jy, h)?;
        let b_ff = self.vector_field_bracket(p, &fx, &fy, h)?;
        let b_fj = self.vector_field_bracket(p, &fx, &jy, h)?;
        let b_jf = self.vector_field_bracket(p, &jx, &fy, h)?;
        let correction = self.apply_j_unchecked(p, &(&b_fj + &b_jf))?;
        Ok(&(&b_jj - &b_ff) - &correction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge::chart::{DerivMode, Domain, PolynomialFields};
    use crate::lie::LieAlgebra;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn setup(alg: LieAlgebra, seed: u64) -> (GaugeChart, BundlePoint, ChaCha8Rng) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = alg.dim();
        let fields = PolynomialFields::random(d, 2, 0.5, &mut rng);
        let chart = GaugeChart::new(alg.clone(), Domain::cube(d, -1.0, 1.0), Arc::new(fields), DerivMode::Analytic).unwrap();
        let k = alg.exp_real(&AlgebraElement::random(d, &mut rng, 2.0)).unwrap();
        let x = (0..d).map(|i| 0.1 * i as f64 - 0.05).collect();
        (chart, BundlePoint::new(x, k), rng)
    }

    #[test]
    fn closed_form_is_antisymmetric_and_vanishes_on_the_diagonal() {
        let (chart, p, mut rng) = setup(LieAlgebra::su2(), 1);
        let x = AlgebraElement::random(3, &mut rng, 1.0);
        let y = AlgebraElement::random(3, &mut rng, 1.0);
        let nxy = chart.nijenhuis_closed_form(&p, &x, &y).unwrap();
        let nyx = chart.nijenhuis_closed_form(&p, &y, &x).unwrap();
        assert!((&nxy + &nyx).norm() < 1e-12);
        assert_eq!(chart.nijenhuis_closed_form(&p, &x, &x).unwrap().norm(), 0.0);
    }

    #[test]
    fn fundamental_bracket_is_bracket_of_generators() {
        let (chart, p, mut rng) = setup(LieAlgebra::so3(), 2);
        let x = AlgebraElement::random(3, &mut rng, 1.0);
        let y = AlgebraElement::random(3, &mut rng, 1.0);
        let b = chart
            .vector_field_bracket(&p, &FieldSpec::Fundamental(x.clone()), &FieldSpec::Fundamental(y.clone()), 1e-3)
            .unwrap();
        assert!(b.horizontal.norm() < 1e-12);
        assert!((&b.vertical - &chart.algebra().br(&x, &y)).coeff_norm() < 1e-6);
    }

    #[test]
    fn numeric_matches_closed_form_on_random_chart() {
        let (chart, p, mut rng) = setup(LieAlgebra::su2(), 3);
        let x = AlgebraElement::random(3, &mut rng, 1.0);
        let y = AlgebraElement::random(3, &mut rng, 1.0);
        let closed = chart.nijenhuis_closed_form(&p, &x, &y).unwrap();
        let e1 = (&chart.nijenhuis_numeric(&p, &x, &y, 1e-3).unwrap() - &closed).norm();
        let e2 = (&chart.nijenhuis_numeric(&p, &x, &y, 5e-4).unwrap() - &closed).norm();
        assert!(closed.norm() > 1e-2);
        assert!(e1 < 1e-4 * closed.norm(), "e1 = {e1}");
        assert!((e1 / e2).log2() > 1.9, "order {}", (e1 / e2).log2());
    }

    #[test]
    fn abelian_vertical_part_is_minus_curvature() {
        let (chart, p, mut rng) = setup(LieAlgebra::torus(2), 4);
        let x = AlgebraElement::random(2, &mut rng, 1.0);
        let y = AlgebraElement::random(2, &mut rng, 1.0);
        let n = chart.nijenhuis_closed_form(&p, &x, &y).unwrap();
        let hu = chart.solder_inverse_at(&p, &x).unwrap();
        let hv = chart.solder_inverse_at(&p, &y).unwrap();
        let f = chart.curvature(&p.x).unwrap().eval(hu.as_slice(), hv.as_slice());
        assert!((&n.vertical + &f).coeff_norm() < 1e-12);
        assert!(f.coeff_norm() > 1e-3);
    }

    #[test]
    fn tensor_anticommutes_with_j() {
        let (chart, p, mut rng) = setup(LieAlgebra::su2(), 5);
        let rand_v = |rng: &mut ChaCha8Rng| {
            TangentVector::new(AlgebraElement::random(3, rng, 1.0).into_vector(), AlgebraElement::random(3, rng, 1.0))
        };
        let u = rand_v(&mut rng);
        let v = rand_v(&mut rng);
        let jv = chart.apply_j(&p, &v).unwrap();
        let lhs = chart.nijenhuis_tensor(&p, &u, &jv).unwrap();
        let rhs = chart.apply_j(&p, &chart.nijenhuis_tensor(&p, &u, &v).unwrap()).unwrap().scale(-1.0);
        assert!((&lhs - &rhs).norm() < 1e-10);
        let uv = chart.nijenhuis_tensor(&p, &u, &v).unwrap();
        let vu = chart.nijenhuis_tensor(&p, &v, &u).unwrap();
        assert!((&uv + &vu).norm() < 1e-10);
    }
}
