//! Real Lie algebras given by structure constants, their complexifications,
//! and the three built-in compact algebras `su(2)`, `so(3)` and `t^n`.

use std::f64::consts::SQRT_2;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::group::Representation;

/// Coordinates of an element of a real Lie algebra in its fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    coeffs: DVector<f64>,
}

impl AlgebraElement {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs: DVector::from_vec(coeffs) }
    }

    pub fn from_vector(coeffs: DVector<f64>) -> Self {
        Self { coeffs }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { coeffs: DVector::zeros(dim) }
    }

    /// The `i`-th basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut coeffs = DVector::zeros(dim);
        coeffs[i] = 1.0;
        Self { coeffs }
    }

    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R, scale: f64) -> Self {
        Self::new((0..dim).map(|_| scale * rng.random_range(-1.0..1.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &DVector<f64> {
        &self.coeffs
    }

    pub fn into_vector(self) -> DVector<f64> {
        self.coeffs
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { coeffs: &self.coeffs * s }
    }

    /// Euclidean norm of the coefficient vector (equal to the algebra norm
    /// whenever the basis is orthonormal).
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.norm()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0.0)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { coeffs: &self.coeffs + &rhs.coeffs }
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        AlgebraElement { coeffs: self.coeffs + rhs.coeffs }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { coeffs: &self.coeffs - &rhs.coeffs }
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        AlgebraElement { coeffs: self.coeffs - rhs.coeffs }
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { coeffs: -self.coeffs }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { coeffs: -&self.coeffs }
    }
}

impl Mul<f64> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, s: f64) -> AlgebraElement {
        self.scale(s)
    }
}

impl Mul<f64> for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, s: f64) -> AlgebraElement {
        AlgebraElement { coeffs: self.coeffs * s }
    }
}

/// An element `X + iY` of the complexified algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexAlgebraElement {
    pub re: AlgebraElement,
    pub im: AlgebraElement,
}

impl ComplexAlgebraElement {
    pub fn new(re: AlgebraElement, im: AlgebraElement) -> Self {
        assert_eq!(re.dim(), im.dim(), "real and imaginary parts differ in dimension");
        Self { re, im }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { re: AlgebraElement::zeros(dim), im: AlgebraElement::zeros(dim) }
    }

    pub fn real(x: AlgebraElement) -> Self {
        let dim = x.dim();
        Self { re: x, im: AlgebraElement::zeros(dim) }
    }

    pub fn imaginary(y: AlgebraElement) -> Self {
        let dim = y.dim();
        Self { re: AlgebraElement::zeros(dim), im: y }
    }

    pub fn from_complex_coeffs(coeffs: &[Complex64]) -> Self {
        Self {
            re: AlgebraElement::new(coeffs.iter().map(|c| c.re).collect()),
            im: AlgebraElement::new(coeffs.iter().map(|c| c.im).collect()),
        }
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    pub fn complex_coeffs(&self) -> Vec<Complex64> {
        self.re
            .coeffs()
            .iter()
            .zip(self.im.coeffs().iter())
            .map(|(a, b)| Complex64::new(*a, *b))
            .collect()
    }

    /// Multiplication by a complex scalar.
    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            re: &self.re * s.re - &self.im * s.im,
            im: &self.im * s.re + &self.re * s.im,
        }
    }

    pub fn times_i(&self) -> Self {
        Self { re: -&self.im, im: self.re.clone() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn coeff_norm(&self) -> f64 {
        (self.re.coeff_norm().powi(2) + self.im.coeff_norm().powi(2)).sqrt()
    }
}

impl Add for &ComplexAlgebraElement {
    type Output = ComplexAlgebraElement;
    fn add(self, rhs: &ComplexAlgebraElement) -> ComplexAlgebraElement {
        ComplexAlgebraElement { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &ComplexAlgebraElement {
    type Output = ComplexAlgebraElement;
    fn sub(self, rhs: &ComplexAlgebraElement) -> ComplexAlgebraElement {
        ComplexAlgebraElement { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

/// JSON layout of an algebra definition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub name: String,
    pub dim: usize,
    pub structure_constants: Vec<Vec<Vec<f64>>>,
    pub inner_product: Vec<Vec<f64>>,
}

/// A finite-dimensional real Lie algebra with an ad-invariant inner product.
///
/// Brackets are `[e_i, e_j] = sum_k c[i][j][k] e_k`. Built-in algebras also
/// carry their defining matrix representation, which every group-level
/// operation goes through.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    constants: Vec<f64>,
    metric: DMatrix<f64>,
    /// `ad[i][(k, j)] = c[i][j][k]`, so that `ad(X) Y = [X, Y]`.
    ad: Vec<DMatrix<f64>>,
    rep: Option<Representation>,
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

impl LieAlgebra {
    fn assemble(name: &str, dim: usize, constants: Vec<f64>, metric: DMatrix<f64>) -> Self {
        let ad = (0..dim)
            .map(|i| {
                DMatrix::from_fn(dim, dim, |k, j| constants[(i * dim + j) * dim + k])
            })
            .collect();
        Self { name: name.to_string(), dim, constants, metric, ad, rep: None }
    }

    /// `su(2)` with basis `X_i = -i sigma_i / sqrt(2)` and metric `-tr(XY)`.
    pub fn su2() -> Self {
        let mut constants = vec![0.0; 27];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    constants[(i * 3 + j) * 3 + k] = SQRT_2 * levi_civita(i, j, k);
                }
            }
        }
        let mut alg = Self::assemble("su2", 3, constants, DMatrix::identity(3, 3));
        alg.rep = Some(Representation::su2());
        alg
    }

    /// `so(3)` with basis `L_{e_i}` (`L_x y = x cross y`) and metric `-tr(XY)/2`.
    pub fn so3() -> Self {
        let mut constants = vec![0.0; 27];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    constants[(i * 3 + j) * 3 + k] = levi_civita(i, j, k);
                }
            }
        }
        let mut alg = Self::assemble("so3", 3, constants, DMatrix::identity(3, 3));
        alg.rep = Some(Representation::so3());
        alg
    }

    /// The abelian algebra of the torus `T^n`, realised as `diag(i x_1, ..., i x_n)`.
    pub fn torus(n: usize) -> Self {
        assert!(n >= 1, "torus dimension must be positive");
        let mut alg = Self::assemble(&format!("t{n}"), n, vec![0.0; n * n * n], DMatrix::identity(n, n));
        alg.rep = Some(Representation::torus(n));
        alg
    }

    /// Looks up a built-in algebra by name: `su2`, `so3`, `t<n>`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "su2" => Ok(Self::su2()),
            "so3" => Ok(Self::so3()),
            _ => match name.strip_prefix('t').and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if n >= 1 => Ok(Self::torus(n)),
                _ => Err(Error::Invalid(format!("unknown algebra `{name}`"))),
            },
        }
    }

    /// Builds a user algebra, validating antisymmetry, the Jacobi identity,
    /// positivity and ad-invariance of the inner product. Group-level
    /// operations use the adjoint representation in a metric-orthonormal
    /// frame when the centre is trivial.
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self> {
        let dim = spec.dim;
        if dim == 0 {
            return Err(Error::Invalid("algebra dimension must be positive".into()));
        }
        if spec.structure_constants.len() != dim || spec.inner_product.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: spec.structure_constants.len() });
        }
        let mut constants = vec![0.0; dim * dim * dim];
        for (i, plane) in spec.structure_constants.iter().enumerate() {
            if plane.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: plane.len() });
            }
            for (j, row) in plane.iter().enumerate() {
                if row.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
                }
                for (k, c) in row.iter().enumerate() {
                    constants[(i * dim + j) * dim + k] = *c;
                }
            }
        }
        let mut metric = DMatrix::zeros(dim, dim);
        for (i, row) in spec.inner_product.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for (j, g) in row.iter().enumerate() {
                metric[(i, j)] = *g;
            }
        }
        if (&metric - metric.transpose()).amax() > 1e-12 {
            return Err(Error::Invalid("inner product is not symmetric".into()));
        }
        let chol = metric
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Invalid("inner product is not positive-definite".into()))?;
        let mut alg = Self::assemble(&spec.name, dim, constants, metric);
        let scale = alg.constants.iter().fold(1.0f64, |m, c| m.max(c.abs()));
        let tol = 1e-10 * scale * scale;
        if alg.antisymmetry_residual() > tol {
            return Err(Error::Invalid("structure constants are not antisymmetric".into()));
        }
        if alg.jacobi_residual() > tol {
            return Err(Error::Invalid("structure constants violate the Jacobi identity".into()));
        }
        if alg.invariance_residual() > tol {
            return Err(Error::Invalid("inner product is not ad-invariant".into()));
        }
        alg.rep = Representation::adjoint(&alg.ad, &chol.l());
        Ok(alg)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: AlgebraSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        let d = self.dim;
        AlgebraSpec {
            name: self.name.clone(),
            dim: d,
            structure_constants: (0..d)
                .map(|i| (0..d).map(|j| (0..d).map(|k| self.structure_constant(i, j, k)).collect()).collect())
                .collect(),
            inner_product: (0..d).map(|i| (0..d).map(|j| self.metric[(i, j)]).collect()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(|c| *c == 0.0)
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn metric(&self) -> &DMatrix<f64> {
        &self.metric
    }

    pub(crate) fn representation(&self) -> Result<&Representation> {
        self.rep.as_ref().ok_or_else(|| Error::NoRepresentation(self.name.clone()))
    }

    pub fn has_representation(&self) -> bool {
        self.rep.is_some()
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(())
    }

    /// Matrix of `ad(X)` acting on coefficient vectors.
    pub fn ad_matrix(&self, x: &AlgebraElement) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, xi) in x.coeffs().iter().enumerate() {
            if *xi != 0.0 {
                m += &self.ad[i] * *xi;
            }
        }
        m
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.br(x, y))
    }

    /// Unchecked bracket for elements known to belong to this algebra.
    pub(crate) fn br(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for (i, xi) in x.coeffs().iter().enumerate() {
            if *xi == 0.0 {
                continue;
            }
            for (j, yj) in y.coeffs().iter().enumerate() {
                let w = xi * yj;
                if w == 0.0 {
                    continue;
                }
                let base = (i * d + j) * d;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * self.constants[base + k];
                }
            }
        }
        AlgebraElement::new(out)
    }

    /// The complex-bilinear extension of the bracket.
    pub fn bracket_complex(&self, x: &ComplexAlgebraElement, y: &ComplexAlgebraElement) -> Result<ComplexAlgebraElement> {
        self.check(&x.re)?;
        self.check(&y.re)?;
        Ok(ComplexAlgebraElement {
            re: self.br(&x.re, &y.re) - self.br(&x.im, &y.im),
            im: self.br(&x.re, &y.im) + self.br(&x.im, &y.re),
        })
    }

    pub fn inner(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.ip(x, y))
    }

    pub(crate) fn ip(&self, x: &AlgebraElement, y: &AlgebraElement) -> f64 {
        x.coeffs().dot(&(&self.metric * y.coeffs()))
    }

    pub fn norm(&self, x: &AlgebraElement) -> f64 {
        self.ip(x, x).max(0.0).sqrt()
    }

    /// Sesquilinear product on the complexification, antilinear in the first
    /// slot; it restricts to the real inner product on real elements.
    pub fn inner_hermitian(&self, x: &ComplexAlgebraElement, y: &ComplexAlgebraElement) -> Complex64 {
        Complex64::new(
            self.ip(&x.re, &y.re) + self.ip(&x.im, &y.im),
            self.ip(&x.re, &y.im) - self.ip(&x.im, &y.re),
        )
    }

    /// Complex-bilinear extension `B(x, y)`; `B(mu, mu) = sum mu_i^2` in an
    /// orthonormal basis.
    pub fn bilinear_complex(&self, x: &ComplexAlgebraElement, y: &ComplexAlgebraElement) -> Complex64 {
        Complex64::new(
            self.ip(&x.re, &y.re) - self.ip(&x.im, &y.im),
            self.ip(&x.re, &y.im) + self.ip(&x.im, &y.re),
        )
    }

    pub fn norm_complex(&self, x: &ComplexAlgebraElement) -> f64 {
        self.inner_hermitian(x, x).re.max(0.0).sqrt()
    }

    /// `max |c[i][j][k] + c[j][i][k]|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    worst = worst.max((self.structure_constant(i, j, k) + self.structure_constant(j, i, k)).abs());
                }
            }
        }
        worst
    }

    /// Largest Jacobi-identity defect over all basis quadruples.
    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim;
        let c = |a, b, e| self.structure_constant(a, b, e);
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let s: f64 = (0..d)
                            .map(|m| c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l))
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest `|<[e_k, e_i], e_j> + <e_i, [e_k, e_j]>|` over basis triples.
    pub fn invariance_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for k in 0..d {
            // ad_k^T G + G ad_k must vanish.
            let m = self.ad[k].transpose() * &self.metric + &self.metric * &self.ad[k];
            worst = worst.max(m.amax());
        }
        worst
    }

    /// Invariance defect `<[z, x], y> + <x, [z, y]>` for specific elements.
    pub fn invariance_defect(&self, z: &AlgebraElement, x: &AlgebraElement, y: &AlgebraElement) -> f64 {
        (self.ip(&self.br(z, x), y) + self.ip(x, &self.br(z, y))).abs()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zeros(self.dim)
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim, i)
    }
}
