//! The isomorphism `L: R³ → so(3)`, `L_x(y) = x × y`.

use nalgebra::{Matrix3, Vector3};

use crate::lie::{AlgebraElement, LieAlgebra};

#[derive(Clone, Copy, Debug, Default)]
pub struct LMap;

impl LMap {
    /// `L_x` in the basis `L_{e_i}` of the built-in `so(3)`.
    pub fn apply(&self, x: &Vector3<f64>) -> AlgebraElement {
        AlgebraElement::new(vec![x[0], x[1], x[2]])
    }

    pub fn inverse(&self, a: &AlgebraElement) -> Vector3<f64> {
        Vector3::new(a.coeffs()[0], a.coeffs()[1], a.coeffs()[2])
    }

    /// Matrix of `y ↦ x × y`.
    pub fn matrix(&self, x: &Vector3<f64>) -> Matrix3<f64> {
        x.cross_matrix()
    }

    /// The algebra `L` lands in.
    pub fn algebra(&self) -> LieAlgebra {
        LieAlgebra::so3()
    }
}
