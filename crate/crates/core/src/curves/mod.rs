//! Holomorphic curves from `g_C`-valued forms: development, period
//! conditions and the quadric.

mod analysis;
mod form;
mod lattice;
mod spec;

pub use analysis::{conformality, projectivize, quadric_polynomial, quadric_residual, type10_residual, Conformality, ProjectivePoint, VANISHING_TOL};
pub use form::{complex_element, develop, develop_scalar_closed_form, reconstruct_f, route_disagreement, CurveForm, DevelopConfig, FormKind, Path, Surface};
pub use lattice::{
    best_rational, lattice_condition, reduce_basis, scalar_factorization, Factorization, LatticeVerdict, Membership, PeriodData,
    StabilizerGroup, IRRATIONAL_TOL, MAX_DENOMINATOR, MAX_ENUMERATED, RATIONAL_TOL,
};
pub use spec::{ComplexElementSpec, CurveFormSpec, SurfaceSpec};
