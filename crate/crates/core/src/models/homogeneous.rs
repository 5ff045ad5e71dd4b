//! The sample bundle `G → G/K`, trivialised by the section
//! `s(x) = exp(i Σ x_μ M_μ)`. The left Maurer–Cartan form pulled back by
//! `s` splits as `θ = A - iα`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gauge::{BundlePoint, DerivMode, Domain, FieldDerivatives, GaugeChart, GaugeFields};
use crate::lie::{expm, AlgebraElement, CMatrix, ComplexAlgebraElement, GroupElement, LieAlgebra};

/// Chart box `[-HOMOGENEOUS_RADIUS, HOMOGENEOUS_RADIUS]^n`.
pub const HOMOGENEOUS_RADIUS: f64 = 1.5;

#[derive(Clone, Debug)]
pub struct HomogeneousFields {
    algebra: LieAlgebra,
    /// `E_μ = i M_μ`.
    directions: Vec<CMatrix>,
}

fn block_exp(blocks: &[&CMatrix], diag: &CMatrix) -> CMatrix {
    // upper bidiagonal block matrix with `diag` on the diagonal and
    // `blocks` on the superdiagonal
    let m = diag.nrows();
    let b = blocks.len() + 1;
    let mut big = CMatrix::zeros(b * m, b * m);
    for i in 0..b {
        big.view_mut((i * m, i * m), (m, m)).copy_from(diag);
    }
    for (i, e) in blocks.iter().enumerate() {
        big.view_mut((i * m, (i + 1) * m), (m, m)).copy_from(e);
    }
    expm(&big).expect("finite block exponential")
}

impl HomogeneousFields {
    pub fn new(algebra: LieAlgebra) -> Result<Self> {
        let directions = (0..algebra.dim())
            .map(|mu| algebra.matrix_of_complex(&ComplexAlgebraElement::imaginary(algebra.basis_element(mu))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { algebra, directions })
    }

    fn exponent(&self, x: &[f64]) -> CMatrix {
        let z = ComplexAlgebraElement::imaginary(AlgebraElement::new(x.to_vec()));
        self.algebra.matrix_of_complex(&z).expect("representation checked")
    }

    /// `s(x)`, its inverse and the first partials `D_μ = ∂_μ s`.
    fn section_jet(&self, x: &[f64]) -> (CMatrix, CMatrix, Vec<CMatrix>) {
        let s_exp = self.exponent(x);
        let m = s_exp.nrows();
        let blocks: Vec<CMatrix> = self.directions.iter().map(|e| block_exp(&[e], &s_exp)).collect();
        // the diagonal blocks are s itself
        let s = blocks[0].view((0, 0), (m, m)).into_owned();
        let s_inv = s.clone().try_inverse().expect("exponentials are invertible");
        let d = blocks.iter().map(|b| b.view((0, m), (m, m)).into_owned()).collect();
        (s, s_inv, d)
    }

    /// `θ_μ = s^{-1} ∂_μ s` in algebra coordinates.
    fn theta(&self, x: &[f64]) -> Vec<ComplexAlgebraElement> {
        if self.algebra.is_abelian() {
            // s^{-1} ∂_μ s = i E_μ exactly
            let n = x.len();
            return (0..n).map(|mu| ComplexAlgebraElement::imaginary(AlgebraElement::basis(n, mu))).collect();
        }
        let (_, s_inv, d) = self.section_jet(x);
        d.iter().map(|dm| self.algebra.decompose(&(&s_inv * dm)).expect("representation checked")).collect()
    }

    pub fn section(&self, x: &[f64]) -> GroupElement {
        GroupElement::from_matrix(expm(&self.exponent(x)).expect("finite exponential"))
    }
}

impl GaugeFields for HomogeneousFields {
    fn connection(&self, x: &[f64]) -> Vec<AlgebraElement> {
        self.theta(x).into_iter().map(|t| t.re).collect()
    }

    fn solder(&self, x: &[f64]) -> Vec<AlgebraElement> {
        self.theta(x).into_iter().map(|t| -t.im).collect()
    }

    fn connection_and_solder(&self, x: &[f64]) -> (Vec<AlgebraElement>, Vec<AlgebraElement>) {
        self.theta(x).into_iter().map(|t| (t.re, -t.im)).unzip()
    }

    fn derivatives(&self, x: &[f64]) -> Option<FieldDerivatives> {
        let n = self.directions.len();
        if self.algebra.is_abelian() {
            let zero = vec![vec![AlgebraElement::zeros(n); n]; n];
            return Some(FieldDerivatives { connection: zero.clone(), solder: zero });
        }
        let s_exp = self.exponent(x);
        let m = s_exp.nrows();
        let (_, s_inv, d) = self.section_jet(x);
        let mut connection = vec![Vec::with_capacity(n); n];
        let mut solder = vec![Vec::with_capacity(n); n];
        for nu in 0..n {
            for mu in 0..n {
                // ∂_ν ∂_μ s from the Dyson terms of a 3x3 block exponential
                let i_nm = block_exp(&[&self.directions[nu], &self.directions[mu]], &s_exp).view((0, 2 * m), (m, m)).into_owned();
                let i_mn = block_exp(&[&self.directions[mu], &self.directions[nu]], &s_exp).view((0, 2 * m), (m, m)).into_owned();
                let second = i_nm + i_mn;
                let dtheta = -(&s_inv * &d[nu] * &s_inv * &d[mu]) + &s_inv * second;
                let c = self.algebra.decompose(&dtheta).ok()?;
                connection[nu].push(c.re);
                solder[nu].push(-c.im);
            }
        }
        Some(FieldDerivatives { connection, solder })
    }
}

#[derive(Clone, Debug)]
pub struct HomogeneousSample {
    pub chart: GaugeChart,
    fields: Arc<HomogeneousFields>,
}

impl HomogeneousSample {
    pub fn algebra(&self) -> &LieAlgebra {
        self.chart.algebra()
    }

    /// `(x, k) ↦ s(x) k`.
    pub fn to_group(&self, p: &BundlePoint) -> GroupElement {
        &self.fields.section(&p.x) * &p.k
    }

    /// Inverse of [`HomogeneousSample::to_group`] via the left polar
    /// decomposition `g = P k`, `P = s(x)`.
    pub fn from_group(&self, g: &GroupElement) -> Result<BundlePoint> {
        let dagger = GroupElement::from_matrix(g.matrix().adjoint());
        let (k_dagger, x) = self.algebra().kp_decompose(&dagger)?;
        let k = self.algebra().project_compact(&k_dagger.matrix().adjoint())?;
        let point = BundlePoint::new(x.into_vector().as_slice().to_vec(), k);
        self.chart.check_point(&point.x)?;
        Ok(point)
    }
}

pub fn build_homogeneous_sample(name: &str) -> Result<HomogeneousSample> {
    let algebra = LieAlgebra::builtin(name).map_err(|_| Error::UnsupportedModel(format!("homog:{name}")))?;
    let fields = Arc::new(HomogeneousFields::new(algebra.clone())?);
    let n = algebra.dim();
    let chart = GaugeChart::new(
        algebra,
        Domain::cube(n, -HOMOGENEOUS_RADIUS, HOMOGENEOUS_RADIUS),
        fields.clone(),
        DerivMode::Analytic,
    )?;
    Ok(HomogeneousSample { chart, fields })
}
