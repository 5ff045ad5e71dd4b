//! Gauge charts: a box in the base together with the local connection `A`
//! and the local representative of the ad-valued form `alpha`.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{AlgebraElement, LieAlgebra};
use crate::poly::MultiPoly;

/// Largest accepted condition number of the solder matrix.
pub const MAX_SOLDER_CONDITION: f64 = 1e8;

/// Partial derivatives of both fields: `connection[nu][mu] = ∂_ν A_μ`.
#[derive(Clone, Debug)]
pub struct FieldDerivatives {
    pub connection: Vec<Vec<AlgebraElement>>,
    pub solder: Vec<Vec<AlgebraElement>>,
}

/// Field data of a chart. Implementations must be pure.
pub trait GaugeFields: Send + Sync + fmt::Debug {
    /// `A_μ(x)` for each coordinate direction.
    fn connection(&self, x: &[f64]) -> Vec<AlgebraElement>;
    /// `α_μ(x)` for each coordinate direction.
    fn solder(&self, x: &[f64]) -> Vec<AlgebraElement>;
    /// Both fields at once, for implementations that share work between them.
    fn connection_and_solder(&self, x: &[f64]) -> (Vec<AlgebraElement>, Vec<AlgebraElement>) {
        (self.connection(x), self.solder(x))
    }
    /// Closed-form derivatives, if the field knows them.
    fn derivatives(&self, _x: &[f64]) -> Option<FieldDerivatives> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DerivMode {
    Analytic,
    /// Central differences with step `h`.
    Numeric { h: f64 },
}

impl Default for DerivMode {
    fn default() -> Self {
        DerivMode::Numeric { h: 1e-4 }
    }
}

/// Axis-aligned box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl Domain {
    pub fn new(min: Vec<f64>, max: Vec<f64>) -> Result<Self> {
        if min.len() != max.len() {
            return Err(Error::DimensionMismatch { expected: min.len(), found: max.len() });
        }
        if min.iter().zip(&max).any(|(a, b)| !(a < b)) {
            return Err(Error::Invalid("domain box must satisfy min < max".into()));
        }
        Ok(Self { min, max })
    }

    pub fn cube(n: usize, lo: f64, hi: f64) -> Self {
        Self { min: vec![lo; n], max: vec![hi; n] }
    }

    pub fn dim(&self) -> usize {
        self.min.len()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && x.iter().zip(self.min.iter().zip(&self.max)).all(|(v, (a, b))| v >= a && v <= b)
    }

    /// Affine image of a unit-cube point.
    pub fn from_unit(&self, u: &[f64]) -> Vec<f64> {
        u.iter().zip(self.min.iter().zip(&self.max)).map(|(t, (a, b))| a + t * (b - a)).collect()
    }
}

/// Antisymmetric array of algebra elements, `comps[μ][ν]`.
#[derive(Clone, Debug)]
pub struct TwoForm {
    pub comps: Vec<Vec<AlgebraElement>>,
}

impl TwoForm {
    /// `Σ_{μ<ν} F_{μν} (u^μ v^ν - u^ν v^μ)`; exactly zero for `u = v`.
    pub fn eval(&self, u: &[f64], v: &[f64]) -> AlgebraElement {
        let d = self.comps[0][0].dim();
        let mut out = DVector::zeros(d);
        for (mu, row) in self.comps.iter().enumerate() {
            for (nu, f) in row.iter().enumerate().skip(mu + 1) {
                let w = u[mu] * v[nu] - u[nu] * v[mu];
                if w != 0.0 {
                    out.axpy(w, f.coeffs(), 1.0);
                }
            }
        }
        AlgebraElement::from_vector(out)
    }

    pub fn get(&self, mu: usize, nu: usize) -> &AlgebraElement {
        &self.comps[mu][nu]
    }

    /// Largest coefficient norm over all components.
    pub fn max_norm(&self, alg: &LieAlgebra) -> f64 {
        self.comps.iter().flatten().map(|f| alg.norm(f)).fold(0.0, f64::max)
    }
}

/// The two integrability residuals at a point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `max ‖(d_A α)_{μν}‖`
    pub r1: f64,
    /// `max ‖F_{μν} - [α_μ, α_ν]‖`
    pub r2: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        self.r1.max(self.r2)
    }
}

/// Fields and first derivatives at one point.
#[derive(Clone, Debug)]
pub struct LocalFields {
    pub connection: Vec<AlgebraElement>,
    pub solder: Vec<AlgebraElement>,
    pub derivatives: FieldDerivatives,
}

fn norm1(m: &DMatrix<f64>) -> f64 {
    m.column_iter().map(|c| c.lp_norm(1)).fold(0.0, f64::max)
}

pub(crate) fn contract(fields: &[AlgebraElement], u: &[f64]) -> AlgebraElement {
    let mut out = DVector::zeros(fields[0].dim());
    for (f, c) in fields.iter().zip(u) {
        if *c != 0.0 {
            out.axpy(*c, f.coeffs(), 1.0);
        }
    }
    AlgebraElement::from_vector(out)
}

impl LocalFields {
    pub fn curvature(&self, alg: &LieAlgebra) -> TwoForm {
        let n = self.connection.len();
        let da = &self.derivatives.connection;
        let comps = (0..n)
            .map(|mu| {
                (0..n)
                    .map(|nu| {
                        if mu == nu {
                            return alg.zero();
                        }
                        &(&da[mu][nu] - &da[nu][mu]) + &alg.br(&self.connection[mu], &self.connection[nu])
                    })
                    .collect()
            })
            .collect();
        TwoForm { comps }
    }

    pub fn covariant_d_alpha(&self, alg: &LieAlgebra) -> TwoForm {
        let n = self.connection.len();
        let ds = &self.derivatives.solder;
        let (a, s) = (&self.connection, &self.solder);
        let comps = (0..n)
            .map(|mu| {
                (0..n)
                    .map(|nu| {
                        if mu == nu {
                            return alg.zero();
                        }
                        let exterior = &ds[mu][nu] - &ds[nu][mu];
                        &(&exterior + &alg.br(&a[mu], &s[nu])) - &alg.br(&a[nu], &s[mu])
                    })
                    .collect()
            })
            .collect();
        TwoForm { comps }
    }

    pub fn residuals(&self, alg: &LieAlgebra) -> Residuals {
        let f = self.curvature(alg);
        let r1 = self.covariant_d_alpha(alg).max_norm(alg);
        let n = self.solder.len();
        let mut r2 = 0.0f64;
        for mu in 0..n {
            for nu in 0..n {
                let diff = f.get(mu, nu) - &alg.br(&self.solder[mu], &self.solder[nu]);
                r2 = r2.max(alg.norm(&diff));
            }
        }
        Residuals { r1, r2 }
    }
}

/// A local trivialisation `U x K` with its gauge fields.
#[derive(Clone)]
pub struct GaugeChart {
    algebra: LieAlgebra,
    domain: Domain,
    fields: Arc<dyn GaugeFields>,
    mode: DerivMode,
}

impl fmt::Debug for GaugeChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaugeChart")
            .field("algebra", &self.algebra.name())
            .field("domain", &self.domain)
            .field("mode", &self.mode)
            .finish()
    }
}

impl GaugeChart {
    pub fn new(algebra: LieAlgebra, domain: Domain, fields: Arc<dyn GaugeFields>, mode: DerivMode) -> Result<Self> {
        if domain.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: domain.dim() });
        }
        if let DerivMode::Numeric { h } = mode {
            if !(h > 0.0) {
                return Err(Error::Invalid("difference step must be positive".into()));
            }
        }
        Ok(Self { algebra, domain, fields, mode })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn fields(&self) -> &Arc<dyn GaugeFields> {
        &self.fields
    }

    pub fn base_dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn mode(&self) -> DerivMode {
        self.mode
    }

    pub fn with_mode(&self, mode: DerivMode) -> Self {
        Self { mode, ..self.clone() }
    }

    pub fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.base_dim() {
            return Err(Error::DimensionMismatch { expected: self.base_dim(), found: x.len() });
        }
        if !self.domain.contains(x) {
            return Err(Error::OutsideDomain { point: x.to_vec() });
        }
        Ok(())
    }

    pub fn connection(&self, x: &[f64]) -> Result<Vec<AlgebraElement>> {
        self.check_point(x)?;
        Ok(self.fields.connection(x))
    }

    pub fn solder(&self, x: &[f64]) -> Result<Vec<AlgebraElement>> {
        self.check_point(x)?;
        Ok(self.fields.solder(x))
    }

    pub fn connection_and_solder(&self, x: &[f64]) -> Result<(Vec<AlgebraElement>, Vec<AlgebraElement>)> {
        self.check_point(x)?;
        Ok(self.fields.connection_and_solder(x))
    }

    /// `A(u) = Σ u^μ A_μ(x)`.
    pub fn connection_of(&self, x: &[f64], u: &[f64]) -> Result<AlgebraElement> {
        Ok(contract(&self.connection(x)?, u))
    }

    /// `α(u) = Σ u^μ α_μ(x)`.
    pub fn solder_of(&self, x: &[f64], u: &[f64]) -> Result<AlgebraElement> {
        Ok(contract(&self.solder(x)?, u))
    }

    pub fn derivatives(&self, x: &[f64]) -> Result<FieldDerivatives> {
        self.check_point(x)?;
        match self.mode {
            DerivMode::Analytic => self.fields.derivatives(x).ok_or(Error::DerivativeUnavailable),
            DerivMode::Numeric { h } => Ok(self.central_differences(x, h)),
        }
    }

    fn central_differences(&self, x: &[f64], h: f64) -> FieldDerivatives {
        let n = x.len();
        let mut connection = Vec::with_capacity(n);
        let mut solder = Vec::with_capacity(n);
        for nu in 0..n {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[nu] += h;
            xm[nu] -= h;
            let quotient = |p: Vec<AlgebraElement>, m: Vec<AlgebraElement>| -> Vec<AlgebraElement> {
                p.iter().zip(&m).map(|(a, b)| (a - b).scale(0.5 / h)).collect()
            };
            connection.push(quotient(self.fields.connection(&xp), self.fields.connection(&xm)));
            solder.push(quotient(self.fields.solder(&xp), self.fields.solder(&xm)));
        }
        FieldDerivatives { connection, solder }
    }

    pub fn local_fields(&self, x: &[f64]) -> Result<LocalFields> {
        let derivatives = self.derivatives(x)?;
        Ok(LocalFields { connection: self.fields.connection(x), solder: self.fields.solder(x), derivatives })
    }

    /// Matrix whose columns are the coefficient vectors of `α_μ(x)`.
    pub fn solder_matrix(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.frame_matrix(&self.solder(x)?)
    }

    fn frame_matrix(&self, s: &[AlgebraElement]) -> Result<DMatrix<f64>> {
        let d = self.algebra.dim();
        if s.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: s.len() });
        }
        Ok(DMatrix::from_fn(d, d, |i, mu| s[mu].coeffs()[i]))
    }

    pub fn solder_condition(&self, x: &[f64]) -> Result<f64> {
        let sv = self.solder_matrix(x)?.singular_values();
        let (lo, hi) = (sv.min(), sv.max());
        Ok(if lo > 0.0 { hi / lo } else { f64::INFINITY })
    }

    /// Inverse of the solder matrix, refusing ill-conditioned frames.
    pub fn solder_inverse(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.frame_inverse(&self.solder(x)?)
    }

    /// Inverse of the matrix of already evaluated solder components.
    pub(crate) fn frame_inverse(&self, s: &[AlgebraElement]) -> Result<DMatrix<f64>> {
        let m = self.frame_matrix(s)?;
        let inv = m.clone().try_inverse().ok_or(Error::SingularSolder { condition: f64::INFINITY })?;
        // 1-norm condition number; cheaper than an SVD and within a factor n of it
        let condition = norm1(&m) * norm1(&inv);
        if !(condition <= MAX_SOLDER_CONDITION) {
            return Err(Error::SingularSolder { condition });
        }
        Ok(inv)
    }

    /// Base vector `u` with `α(u) = y`.
    pub fn solder_solve(&self, x: &[f64], y: &AlgebraElement) -> Result<DVector<f64>> {
        Ok(self.solder_inverse(x)? * y.coeffs())
    }

    pub fn curvature(&self, x: &[f64]) -> Result<TwoForm> {
        Ok(self.local_fields(x)?.curvature(&self.algebra))
    }

    pub fn covariant_d_alpha(&self, x: &[f64]) -> Result<TwoForm> {
        Ok(self.local_fields(x)?.covariant_d_alpha(&self.algebra))
    }

    pub fn integrability_residuals(&self, x: &[f64]) -> Result<Residuals> {
        Ok(self.local_fields(x)?.residuals(&self.algebra))
    }
}

/// One polynomial term of a chart field, as read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub mu: usize,
    pub component: usize,
    pub coeff: f64,
    pub powers: Vec<u32>,
}

/// Fields whose coefficients are polynomials in the coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialFields {
    dim: usize,
    /// `connection[μ][i]` is the i-th coefficient of `A_μ`.
    connection: Vec<Vec<MultiPoly>>,
    solder: Vec<Vec<MultiPoly>>,
}

impl PolynomialFields {
    pub fn zero(dim: usize) -> Self {
        let z = vec![vec![MultiPoly::zero(dim); dim]; dim];
        Self { dim, connection: z.clone(), solder: z }
    }

    /// Zero connection and `α_μ = e_μ`.
    pub fn identity_frame(dim: usize) -> Self {
        let mut f = Self::zero(dim);
        for mu in 0..dim {
            f.solder[mu][mu] = MultiPoly::constant(dim, 1.0);
        }
        f
    }

    pub fn from_terms(dim: usize, connection: &[PolyTerm], solder: &[PolyTerm]) -> Result<Self> {
        let mut f = Self::zero(dim);
        for (terms, target) in [(connection, &mut f.connection), (solder, &mut f.solder)] {
            for t in terms {
                if t.mu >= dim || t.component >= dim {
                    return Err(Error::Invalid(format!("polynomial term index out of range: {t:?}")));
                }
                if t.powers.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: t.powers.len() });
                }
                target[t.mu][t.component].add_term(t.coeff, t.powers.clone());
            }
        }
        Ok(f)
    }

    pub fn connection_poly_mut(&mut self, mu: usize, component: usize) -> &mut MultiPoly {
        &mut self.connection[mu][component]
    }

    pub fn solder_poly_mut(&mut self, mu: usize, component: usize) -> &mut MultiPoly {
        &mut self.solder[mu][component]
    }

    /// Random fields of total degree `degree`: a connection with coefficients
    /// of size `scale`, and a solder form that is the identity frame plus a
    /// perturbation of size `scale / 4` (invertible on the unit box for
    /// moderate `scale`).
    pub fn random<R: Rng + ?Sized>(dim: usize, degree: u32, scale: f64, rng: &mut R) -> Self {
        let monomials = monomials(dim, degree);
        let mut f = Self::identity_frame(dim);
        for mu in 0..dim {
            for i in 0..dim {
                for m in &monomials {
                    f.connection[mu][i].add_term(scale * rng.random_range(-1.0..1.0), m.clone());
                    f.solder[mu][i].add_term(0.25 * scale * rng.random_range(-1.0..1.0), m.clone());
                }
            }
        }
        f
    }

    fn eval(polys: &[Vec<MultiPoly>], x: &[f64]) -> Vec<AlgebraElement> {
        polys.iter().map(|row| AlgebraElement::new(row.iter().map(|p| p.eval(x)).collect())).collect()
    }

    fn eval_partial(polys: &[Vec<MultiPoly>], x: &[f64], nu: usize) -> Vec<AlgebraElement> {
        polys.iter().map(|row| AlgebraElement::new(row.iter().map(|p| p.partial(nu).eval(x)).collect())).collect()
    }
}

fn monomials(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; vars]];
    for _ in 0..degree {
        let mut next = out.clone();
        for m in &out {
            for i in 0..vars {
                let mut p = m.clone();
                p[i] += 1;
                if !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        out = next;
    }
    out
}

impl GaugeFields for PolynomialFields {
    fn connection(&self, x: &[f64]) -> Vec<AlgebraElement> {
        Self::eval(&self.connection, x)
    }

    fn solder(&self, x: &[f64]) -> Vec<AlgebraElement> {
        Self::eval(&self.solder, x)
    }

    fn derivatives(&self, x: &[f64]) -> Option<FieldDerivatives> {
        let connection = (0..self.dim).map(|nu| Self::eval_partial(&self.connection, x, nu)).collect();
        let solder = (0..self.dim).map(|nu| Self::eval_partial(&self.solder, x, nu)).collect();
        Some(FieldDerivatives { connection, solder })
    }
}

/// Fields re-expressed in the section `s' = s·exp(φ(x) Z)` with linear `φ`:
/// `A' = Ad_{k^{-1}} A + dφ Z`, `α' = Ad_{k^{-1}} α`.
#[derive(Clone, Debug)]
pub struct GaugeRotated {
    inner: Arc<dyn GaugeFields>,
    algebra: LieAlgebra,
    generator: AlgebraElement,
    gradient: Vec<f64>,
}

impl GaugeRotated {
    pub fn new(inner: Arc<dyn GaugeFields>, algebra: LieAlgebra, generator: AlgebraElement, gradient: Vec<f64>) -> Result<Self> {
        algebra.representation()?;
        if generator.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: generator.dim() });
        }
        Ok(Self { inner, algebra, generator, gradient })
    }

    fn ad_k_inverse(&self, x: &[f64]) -> DMatrix<f64> {
        let phi: f64 = self.gradient.iter().zip(x).map(|(g, v)| g * v).sum();
        let k_inv = self.algebra.exp_real(&self.generator.scale(-phi)).expect("representation checked");
        self.algebra.adjoint_matrix(&k_inv).expect("representation checked")
    }
}

impl GaugeFields for GaugeRotated {
    fn connection(&self, x: &[f64]) -> Vec<AlgebraElement> {
        let ad = self.ad_k_inverse(x);
        self.inner
            .connection(x)
            .iter()
            .zip(&self.gradient)
            .map(|(a, g)| AlgebraElement::from_vector(&ad * a.coeffs()) + self.generator.scale(*g))
            .collect()
    }

    fn solder(&self, x: &[f64]) -> Vec<AlgebraElement> {
        let ad = self.ad_k_inverse(x);
        self.inner.solder(x).iter().map(|a| AlgebraElement::from_vector(&ad * a.coeffs())).collect()
    }
}
