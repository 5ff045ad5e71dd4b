//! JSON form of [`CurveForm`].
//!
//! ```json
//! { "kind": "scalar",
//!   "z": { "re": [0, 0, -8.885765876316732], "im": [0, 0, 0] },
//!   "zeta": [[1, 0]],
//!   "surface": { "type": "torus", "tau": [0, 1] } }
//! ```
//!
//! Polynomial forms use `"kind": "polynomial"` with `"coeffs"`, a list of
//! elements in increasing powers of `z`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curves::{complex_element, CurveForm, FormKind, Surface};
use crate::error::{Error, Result};
use crate::lie::ComplexAlgebraElement;
use crate::poly::ComplexPoly;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexElementSpec {
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Vec<f64>,
}

impl ComplexElementSpec {
    pub fn to_element(&self) -> Result<ComplexAlgebraElement> {
        let im = if self.im.is_empty() { vec![0.0; self.re.len()] } else { self.im.clone() };
        if im.len() != self.re.len() {
            return Err(Error::DimensionMismatch { expected: self.re.len(), found: im.len() });
        }
        Ok(complex_element(&self.re, &im))
    }

    pub fn from_element(z: &ComplexAlgebraElement) -> Self {
        Self { re: z.re.coeffs().as_slice().to_vec(), im: z.im.coeffs().as_slice().to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SurfaceSpec {
    Disc { center: [f64; 2], radius: f64 },
    Torus { tau: [f64; 2] },
}

impl Default for SurfaceSpec {
    fn default() -> Self {
        SurfaceSpec::Disc { center: [0.0, 0.0], radius: 1.0 }
    }
}

impl SurfaceSpec {
    fn to_surface(&self) -> Surface {
        match *self {
            SurfaceSpec::Disc { center, radius } => Surface::Disc { center: Complex64::new(center[0], center[1]), radius },
            SurfaceSpec::Torus { tau } => Surface::Torus { tau: Complex64::new(tau[0], tau[1]) },
        }
    }

    fn from_surface(s: &Surface) -> Self {
        match *s {
            Surface::Disc { center, radius } => SurfaceSpec::Disc { center: [center.re, center.im], radius },
            Surface::Torus { tau } => SurfaceSpec::Torus { tau: [tau.re, tau.im] },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveFormSpec {
    Polynomial {
        coeffs: Vec<ComplexElementSpec>,
        #[serde(default)]
        surface: SurfaceSpec,
    },
    Scalar {
        z: ComplexElementSpec,
        zeta: Vec<[f64; 2]>,
        #[serde(default)]
        surface: SurfaceSpec,
    },
}

impl CurveFormSpec {
    pub fn to_form(&self) -> Result<CurveForm> {
        match self {
            CurveFormSpec::Polynomial { coeffs, surface } => CurveForm::polynomial(
                coeffs.iter().map(|c| c.to_element()).collect::<Result<_>>()?,
                surface.to_surface(),
            ),
            CurveFormSpec::Scalar { z, zeta, surface } => CurveForm::scalar(
                z.to_element()?,
                ComplexPoly::new(zeta.iter().map(|c| Complex64::new(c[0], c[1])).collect()),
                surface.to_surface(),
            ),
        }
    }

    pub fn from_form(form: &CurveForm) -> Self {
        let surface = SurfaceSpec::from_surface(&form.surface);
        match &form.kind {
            FormKind::Polynomial { coeffs } => {
                CurveFormSpec::Polynomial { coeffs: coeffs.iter().map(ComplexElementSpec::from_element).collect(), surface }
            }
            FormKind::Scalar { z, zeta } => CurveFormSpec::Scalar {
                z: ComplexElementSpec::from_element(z),
                zeta: zeta.coeffs.iter().map(|c| [c.re, c.im]).collect(),
                surface,
            },
        }
    }
}

impl CurveForm {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<CurveFormSpec>(text)?.to_form()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&CurveFormSpec::from_form(self))?)
    }
}
