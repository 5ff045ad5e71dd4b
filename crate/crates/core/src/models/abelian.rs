//! Torus bundles with constant curvature: `A_ν = ½ Σ_μ F_{μν} x^μ` and the
//! constant orthonormal frame `α_μ = e_μ`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gauge::{DerivMode, Domain, FieldDerivatives, GaugeChart, GaugeFields};
use crate::lie::{AlgebraElement, LieAlgebra};

#[derive(Clone, Debug)]
pub struct AbelianFields {
    /// `f[μ][ν] = F_{μν}`, antisymmetric.
    f: Vec<Vec<AlgebraElement>>,
}

impl GaugeFields for AbelianFields {
    fn connection(&self, x: &[f64]) -> Vec<AlgebraElement> {
        let n = self.f.len();
        (0..n)
            .map(|nu| (0..n).fold(AlgebraElement::zeros(n), |acc, mu| acc + self.f[mu][nu].scale(0.5 * x[mu])))
            .collect()
    }

    fn solder(&self, _x: &[f64]) -> Vec<AlgebraElement> {
        let n = self.f.len();
        (0..n).map(|mu| AlgebraElement::basis(n, mu)).collect()
    }

    fn derivatives(&self, _x: &[f64]) -> Option<FieldDerivatives> {
        let n = self.f.len();
        let connection = (0..n).map(|mu| (0..n).map(|nu| self.f[mu][nu].scale(0.5)).collect()).collect();
        let solder = vec![vec![AlgebraElement::zeros(n); n]; n];
        Some(FieldDerivatives { connection, solder })
    }
}

/// Chart over `[-1, 1]^n` with structure group `T^n` and curvature `f_spec`.
pub fn build_abelian_chart(n: usize, f_spec: &[Vec<AlgebraElement>]) -> Result<GaugeChart> {
    if n == 0 {
        return Err(Error::Invalid("torus dimension must be positive".into()));
    }
    if f_spec.len() != n || f_spec.iter().any(|row| row.len() != n || row.iter().any(|e| e.dim() != n)) {
        return Err(Error::DimensionMismatch { expected: n, found: f_spec.len() });
    }
    for mu in 0..n {
        for nu in 0..n {
            if (&f_spec[mu][nu] + &f_spec[nu][mu]).coeff_norm() > 0.0 {
                return Err(Error::Invalid("curvature must be antisymmetric".into()));
            }
        }
    }
    let fields = AbelianFields { f: f_spec.to_vec() };
    GaugeChart::new(LieAlgebra::torus(n), Domain::cube(n, -1.0, 1.0), Arc::new(fields), DerivMode::Analytic)
}

/// Curvature array with the single independent component `F_{μν} = value`.
pub fn single_component_curvature(n: usize, mu: usize, nu: usize, value: AlgebraElement) -> Vec<Vec<AlgebraElement>> {
    let mut f = vec![vec![AlgebraElement::zeros(n); n]; n];
    if mu != nu {
        f[nu][mu] = -value.clone();
        f[mu][nu] = value;
    }
    f
}
