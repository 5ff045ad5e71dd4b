//! Real Lie algebras with invariant inner products and their matrix groups.

pub mod algebra;
pub mod group;

pub use algebra::{AlgebraElement, AlgebraSpec, ComplexAlgebraElement, LieAlgebra};
pub use group::{expm, CMatrix, GroupElement, GroupKind, GROUP_TOL};
