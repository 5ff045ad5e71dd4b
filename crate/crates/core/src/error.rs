use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point {point:?} lies outside the chart domain")]
    OutsideDomain { point: Vec<f64> },

    #[error("analytic derivatives requested but the field does not provide them")]
    DerivativeUnavailable,

    #[error("solder form is degenerate (condition number {condition:e})")]
    SingularSolder { condition: f64 },

    #[error("matrix is not in {group} (membership residual {residual:e})")]
    NotInGroup { group: &'static str, residual: f64 },

    #[error("logarithm branch failure: {0}")]
    Branch(String),

    #[error("integrability precondition violated (r1 = {r1:e}, r2 = {r2:e}, tol = {tol:e})")]
    NotIntegrable { r1: f64, r2: f64, tol: f64 },

    #[error("vectors are linearly dependent")]
    Degenerate,

    #[error("trajectory left the chart at t = {t}")]
    ChartExit { t: f64 },

    #[error("integration step underflow ({0:e})")]
    StepUnderflow(f64),

    #[error("integration exceeded max_steps = {0}")]
    TooManySteps(usize),

    #[error("group element blew up (norm {0:e})")]
    BlowUp(f64),

    #[error("algebra `{0}` has no faithful matrix representation")]
    NoRepresentation(String),

    #[error("unsupported model `{0}`")]
    UnsupportedModel(String),

    #[error("form is identically zero")]
    ZeroForm,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
