//! Local trivialisations of `(P, A, α)`: curvature, `d_A α`, the almost
//! complex structure `J_α` and its Nijenhuis tensor.

pub mod bundle;
pub mod chart;
pub mod nijenhuis;

pub use bundle::{BundlePoint, TangentVector};
pub use chart::{
    DerivMode, Domain, FieldDerivatives, GaugeChart, GaugeFields, GaugeRotated, LocalFields, PolyTerm, PolynomialFields,
    Residuals, TwoForm, MAX_SOLDER_CONDITION,
};
pub use nijenhuis::FieldSpec;
