//! Frame bundle of hyperbolic 3-space in the upper half-space chart
//! `{x³ > 0}`, trivialised by the orthonormal frame `e_i = x³ ∂_i`.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::gauge::{DerivMode, Domain, FieldDerivatives, GaugeChart, GaugeFields};
use crate::lie::{AlgebraElement, LieAlgebra};

/// Default chart box.
pub const HYPERBOLIC_MIN: [f64; 3] = [-10.0, -10.0, 1e-3];
pub const HYPERBOLIC_MAX: [f64; 3] = [10.0, 10.0, 100.0];

/// Levi-Civita connection of `δ/t²` in the frame `t ∂_i`, conjugated into
/// `so(3)` by the L-map, together with `α_μ = L(e_μ)/t`.
#[derive(Clone, Debug, Default)]
pub struct HyperbolicFields;

fn l(i: usize) -> AlgebraElement {
    AlgebraElement::basis(3, i)
}

impl GaugeFields for HyperbolicFields {
    fn connection(&self, x: &[f64]) -> Vec<AlgebraElement> {
        let t = x[2];
        vec![l(1).scale(-1.0 / t), l(0).scale(1.0 / t), AlgebraElement::zeros(3)]
    }

    fn solder(&self, x: &[f64]) -> Vec<AlgebraElement> {
        let t = x[2];
        (0..3).map(|mu| l(mu).scale(1.0 / t)).collect()
    }

    fn derivatives(&self, x: &[f64]) -> Option<FieldDerivatives> {
        let t2 = x[2] * x[2];
        let zero = || vec![AlgebraElement::zeros(3); 3];
        let connection = vec![zero(), zero(), vec![l(1).scale(1.0 / t2), l(0).scale(-1.0 / t2), AlgebraElement::zeros(3)]];
        let solder = vec![zero(), zero(), (0..3).map(|mu| l(mu).scale(-1.0 / t2)).collect()];
        Some(FieldDerivatives { connection, solder })
    }
}

#[derive(Clone, Debug)]
pub struct HyperbolicModel {
    pub chart: GaugeChart,
}

impl HyperbolicModel {
    /// Frame section at `x`: columns are the frame vectors `e_i = x³ ∂_i`.
    pub fn frame_section(&self, x: &[f64]) -> DMatrix<f64> {
        DMatrix::identity(3, 3) * x[2]
    }
}

pub fn build_hyperbolic_chart() -> HyperbolicModel {
    let domain = Domain { min: HYPERBOLIC_MIN.to_vec(), max: HYPERBOLIC_MAX.to_vec() };
    let chart = GaugeChart::new(LieAlgebra::so3(), domain, Arc::new(HyperbolicFields), DerivMode::Analytic)
        .expect("hyperbolic chart data is consistent");
    HyperbolicModel { chart }
}
