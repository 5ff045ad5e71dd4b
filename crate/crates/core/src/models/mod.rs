//! Exactly solvable charts: hyperbolic 3-space, the homogeneous sample
//! `G → G/K`, and flat-frame torus bundles.

pub mod abelian;
pub mod homogeneous;
pub mod hyperbolic;
pub mod lmap;

pub use abelian::{build_abelian_chart, single_component_curvature, AbelianFields};
pub use homogeneous::{build_homogeneous_sample, HomogeneousFields, HomogeneousSample};
pub use hyperbolic::{build_hyperbolic_chart, HyperbolicFields, HyperbolicModel};
pub use lmap::LMap;

use crate::error::{Error, Result};
use crate::gauge::GaugeChart;
use crate::lie::AlgebraElement;

/// Resolves `hyperbolic3`, `homog:<algebra>` and `abelian:<n>` (flat).
pub fn model_by_name(name: &str) -> Result<GaugeChart> {
    if name == "hyperbolic3" {
        return Ok(build_hyperbolic_chart().chart);
    }
    if let Some(k) = name.strip_prefix("homog:") {
        return Ok(build_homogeneous_sample(k)?.chart);
    }
    if let Some(n) = name.strip_prefix("abelian:") {
        let n: usize = n.parse().map_err(|_| Error::UnsupportedModel(name.into()))?;
        return build_abelian_chart(n, &vec![vec![AlgebraElement::zeros(n); n]; n]);
    }
    Err(Error::UnsupportedModel(name.into()))
}
