//! Scenario files: which chart to load and what to run on it.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curves::{ComplexElementSpec, CurveFormSpec};
use crate::error::{Error, Result};
use crate::gauge::{DerivMode, Domain, GaugeChart, PolyTerm, PolynomialFields};
use crate::lie::{AlgebraElement, AlgebraSpec, LieAlgebra};
use crate::models::{build_abelian_chart, model_by_name};

/// A built-in model name or an inline polynomial chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelRef {
    Named(String),
    Inline(InlineChart),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum AlgebraRef {
    Builtin(String),
    Custom(AlgebraSpec),
}

impl AlgebraRef {
    pub fn build(&self) -> Result<LieAlgebra> {
        match self {
            AlgebraRef::Builtin(name) => LieAlgebra::builtin(name),
            AlgebraRef::Custom(spec) => LieAlgebra::from_spec(spec),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineChart {
    pub algebra: AlgebraRef,
    pub domain: DomainSpec,
    #[serde(default)]
    pub connection: Vec<PolyTerm>,
    #[serde(default)]
    pub solder: Vec<PolyTerm>,
    /// Finite-difference step; analytic derivatives when absent.
    #[serde(default)]
    pub numeric_h: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

/// One independent component `F_{μν}` of an abelian curvature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvatureComponent {
    pub mu: usize,
    pub nu: usize,
    pub value: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicInit {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicParams {
    #[serde(default)]
    pub initial: Vec<GeodesicInit>,
    #[serde(default = "default_duration")]
    pub duration: f64,
    /// Keep every n-th integrator state in the CSV.
    #[serde(default = "default_stride")]
    pub stride: usize,
}

fn default_duration() -> f64 {
    2.0
}

fn default_stride() -> usize {
    10
}

impl Default for GeodesicParams {
    fn default() -> Self {
        Self { initial: Vec::new(), duration: default_duration(), stride: default_stride() }
    }
}

/// A stabiliser generator: `exp` of a complex algebra element, or an
/// explicit matrix of `[re, im]` entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Exp { exp: ComplexElementSpec },
    Matrix { matrix: Vec<Vec<[f64; 2]>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilizerSpec {
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    /// Also add `exp(Z w)` for every period `w`.
    #[serde(default)]
    pub from_periods: bool,
    #[serde(default = "default_depth")]
    pub closure_depth: usize,
    #[serde(default = "default_membership_tol")]
    pub tolerance: f64,
}

fn default_depth() -> usize {
    4
}

fn default_membership_tol() -> f64 {
    1e-9
}

impl Default for StabilizerSpec {
    fn default() -> Self {
        Self { generators: Vec::new(), from_periods: false, closure_depth: default_depth(), tolerance: default_membership_tol() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveParams {
    pub algebra: AlgebraRef,
    pub form: CurveFormSpec,
    /// Periods of `ζ` as `[re, im]`; derived from the surface when absent.
    #[serde(default)]
    pub periods: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub stabilizer: StabilizerSpec,
}

impl CurveParams {
    pub fn periods(&self) -> Option<Vec<Complex64>> {
        self.periods.as_ref().map(|ps| ps.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub model: Option<ModelRef>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub points: Option<usize>,
    #[serde(default)]
    pub step: Option<f64>,
    #[serde(default)]
    pub tol: Option<f64>,
    /// Curvature of `abelian:<n>` models.
    #[serde(default)]
    pub abelian_curvature: Vec<CurvatureComponent>,
    /// Value every sectional curvature sample is compared against.
    #[serde(default)]
    pub expected_curvature: Option<f64>,
    #[serde(default)]
    pub geodesic: Option<GeodesicParams>,
    #[serde(default)]
    pub curve: Option<CurveParams>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn model_name(&self) -> String {
        match &self.model {
            Some(ModelRef::Named(n)) => n.clone(),
            Some(ModelRef::Inline(_)) => "inline".into(),
            None => "none".into(),
        }
    }

    pub fn build_chart(&self) -> Result<GaugeChart> {
        match &self.model {
            None => Err(Error::Invalid("scenario has no model".into())),
            Some(ModelRef::Named(name)) => {
                if let Some(n) = name.strip_prefix("abelian:") {
                    let n: usize = n.parse().map_err(|_| Error::UnsupportedModel(name.clone()))?;
                    let mut f = vec![vec![AlgebraElement::zeros(n); n]; n];
                    for c in &self.abelian_curvature {
                        if c.mu >= n || c.nu >= n || c.mu == c.nu || c.value.len() != n {
                            return Err(Error::Invalid(format!("bad curvature component {c:?}")));
                        }
                        let v = AlgebraElement::new(c.value.clone());
                        f[c.mu][c.nu] = v.clone();
                        f[c.nu][c.mu] = -v;
                    }
                    build_abelian_chart(n, &f)
                } else {
                    model_by_name(name)
                }
            }
            Some(ModelRef::Inline(spec)) => {
                let algebra = spec.algebra.build()?;
                let n = algebra.dim();
                let domain = Domain::new(spec.domain.min.clone(), spec.domain.max.clone())?;
                if domain.dim() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: domain.dim() });
                }
                let fields = PolynomialFields::from_terms(n, &spec.connection, &spec.solder)?;
                let mode = match spec.numeric_h {
                    Some(h) if h > 0.0 => DerivMode::Numeric { h },
                    Some(h) => return Err(Error::Invalid(format!("finite-difference step must be positive, got {h}"))),
                    None => DerivMode::Analytic,
                };
                GaugeChart::new(algebra, domain, Arc::new(fields), mode)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_and_inline_models_load() {
        let s = Scenario::from_json(r#"{"model": "hyperbolic3", "seed": 3}"#).unwrap();
        assert_eq!(s.build_chart().unwrap().base_dim(), 3);
        let inline = r#"{"model": {"algebra": "su2", "domain": {"min": [-1,-1,-1], "max": [1,1,1]},
            "solder": [{"mu":0,"component":0,"coeff":1,"powers":[0,0,0]},
                       {"mu":1,"component":1,"coeff":1,"powers":[0,0,0]},
                       {"mu":2,"component":2,"coeff":1,"powers":[0,0,0]}]}}"#;
        let c = Scenario::from_json(inline).unwrap().build_chart().unwrap();
        assert_eq!(c.integrability_residuals(&[0.0; 3]).unwrap().r1, 0.0);
    }

    #[test]
    fn abelian_curvature_is_antisymmetrised() {
        let s = Scenario::from_json(r#"{"model": "abelian:2", "abelian_curvature": [{"mu":0,"nu":1,"value":[0.5,0]}]}"#).unwrap();
        let c = s.build_chart().unwrap();
        let f = c.curvature(&[0.1, 0.2]).unwrap();
        assert_eq!(f.get(0, 1).coeffs()[0], 0.5);
        assert_eq!(f.get(1, 0).coeffs()[0], -0.5);
    }

    #[test]
    fn unknown_fields_and_models_are_rejected() {
        assert!(Scenario::from_json(r#"{"model": "hyperbolic3", "sead": 3}"#).is_err());
        assert!(Scenario::from_json(r#"{"model": "sphere"}"#).unwrap().build_chart().is_err());
    }
}
