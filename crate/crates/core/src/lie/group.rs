//! Matrix groups `K` and `G = K^C` in the defining representation:
//! exponential, polar (KP) decomposition, adjoint action.

use std::ops::Mul;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie::algebra::{AlgebraElement, ComplexAlgebraElement, LieAlgebra};

pub type CMatrix = DMatrix<Complex64>;

/// Membership tolerance on `|g*g - 1|`, `|g^T g - 1|` and `|det g - 1|`.
pub const GROUP_TOL: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which matrix group the defining representation realises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `SU(n)` inside `SL(n, C)`.
    SpecialUnitary,
    /// `SO(n)` inside `SO(n, C)`.
    SpecialOrthogonal,
    /// Diagonal phases inside `(C*)^n`.
    Torus,
}

#[derive(Clone, Debug)]
pub(crate) struct Representation {
    kind: GroupKind,
    basis: Vec<CMatrix>,
    /// Inverse Gram matrix of the basis under `tr(A* B)`.
    gram_inv: CMatrix,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Representation {
    fn from_basis(kind: GroupKind, basis: Vec<CMatrix>) -> Option<Self> {
        let d = basis.len();
        let gram = CMatrix::from_fn(d, d, |i, j| (basis[i].adjoint() * &basis[j]).trace());
        let gram_inv = gram.try_inverse()?;
        Some(Self { kind, basis, gram_inv })
    }

    pub(crate) fn su2() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // X_k = -i sigma_k / sqrt(2)
        let x1 = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -s), c(0.0, -s), c(0.0, 0.0)]);
        let x2 = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-s, 0.0), c(s, 0.0), c(0.0, 0.0)]);
        let x3 = CMatrix::from_row_slice(2, 2, &[c(0.0, -s), c(0.0, 0.0), c(0.0, 0.0), c(0.0, s)]);
        Self::from_basis(GroupKind::SpecialUnitary, vec![x1, x2, x3]).expect("independent basis")
    }

    pub(crate) fn so3() -> Self {
        let basis = (0..3)
            .map(|i| {
                CMatrix::from_fn(3, 3, |j, b| {
                    // (L_{e_i})_{jb} = eps_{j i b}
                    let e = match (j, i, b) {
                        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                        _ => 0.0,
                    };
                    c(e, 0.0)
                })
            })
            .collect();
        Self::from_basis(GroupKind::SpecialOrthogonal, basis).expect("independent basis")
    }

    pub(crate) fn torus(n: usize) -> Self {
        let basis = (0..n)
            .map(|m| CMatrix::from_fn(n, n, |a, b| if a == b && a == m { I } else { c(0.0, 0.0) }))
            .collect();
        Self::from_basis(GroupKind::Torus, basis).expect("independent basis")
    }

    /// Adjoint representation written in a metric-orthonormal frame, where
    /// `metric = chol * chol^T`. Returns `None` if the centre is nontrivial.
    pub(crate) fn adjoint(ad: &[DMatrix<f64>], chol: &DMatrix<f64>) -> Option<Self> {
        let inv_t = chol.transpose().try_inverse()?;
        let basis: Vec<CMatrix> = ad
            .iter()
            .map(|a| (chol.transpose() * a * &inv_t).map(|v| c(v, 0.0)))
            .collect();
        let d = basis.len();
        let stacked = DMatrix::from_fn(d * d, d, |r, col| basis[col][(r / d, r % d)].re);
        let sv = stacked.singular_values();
        if sv.min() < 1e-10 * sv.max().max(1e-300) {
            return None;
        }
        Self::from_basis(GroupKind::SpecialOrthogonal, basis)
    }

    pub(crate) fn kind(&self) -> GroupKind {
        self.kind
    }

    pub(crate) fn size(&self) -> usize {
        self.basis[0].nrows()
    }

    pub(crate) fn matrix_of(&self, x: &AlgebraElement) -> CMatrix {
        let n = self.size();
        let mut m = CMatrix::zeros(n, n);
        for (b, xi) in self.basis.iter().zip(x.coeffs().iter()) {
            if *xi != 0.0 {
                m += b * c(*xi, 0.0);
            }
        }
        m
    }

    pub(crate) fn matrix_of_complex(&self, z: &ComplexAlgebraElement) -> CMatrix {
        let n = self.size();
        let mut m = CMatrix::zeros(n, n);
        for (b, (x, y)) in self.basis.iter().zip(z.re.coeffs().iter().zip(z.im.coeffs().iter())) {
            m += b * c(*x, *y);
        }
        m
    }

    pub(crate) fn decompose(&self, m: &CMatrix) -> ComplexAlgebraElement {
        let d = self.basis.len();
        let rhs = nalgebra::DVector::from_fn(d, |i, _| {
            self.basis[i].iter().zip(m.iter()).map(|(b, v)| b.conj() * v).sum::<Complex64>()
        });
        let coeffs = &self.gram_inv * rhs;
        ComplexAlgebraElement::from_complex_coeffs(coeffs.as_slice())
    }
}

/// A group element in the defining representation.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    matrix: CMatrix,
}

impl GroupElement {
    pub fn from_matrix(matrix: CMatrix) -> Self {
        assert!(matrix.is_square(), "group elements are square matrices");
        Self { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: CMatrix::identity(n, n) }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn inverse(&self) -> Result<Self> {
        self.matrix
            .clone()
            .try_inverse()
            .map(|matrix| Self { matrix })
            .ok_or_else(|| Error::Numerical("singular group element".into()))
    }

    /// Frobenius distance between the two matrices.
    pub fn distance(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix).norm()
    }

    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        GroupElement { matrix: &self.matrix * &rhs.matrix }
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: GroupElement) -> GroupElement {
        GroupElement { matrix: self.matrix * rhs.matrix }
    }
}

/// Matrix exponential by scaling and squaring with a degree-6 diagonal Pade
/// approximant; the scaled matrix has 1-norm at most 1/2.
pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    let norm1 = (0..n)
        .map(|j| a.column(j).iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0f64, f64::max);
    if !norm1.is_finite() {
        return Err(Error::Numerical("non-finite matrix in exponential".into()));
    }
    let squarings = if norm1 > 0.5 { (norm1 / 0.5).log2().ceil() as i32 } else { 0 };
    let scaled = a * c(0.5f64.powi(squarings), 0.0);

    const Q: usize = 6;
    let mut coeff = 1.0;
    let ident = CMatrix::identity(n, n);
    let mut power = ident.clone();
    let mut num = ident.clone();
    let mut den = ident;
    for j in 0..Q {
        coeff *= (Q - j) as f64 / ((j + 1) * (2 * Q - j)) as f64;
        power = &power * &scaled;
        let term = &power * c(coeff, 0.0);
        num += &term;
        if j % 2 == 0 {
            den -= &term;
        } else {
            den += &term;
        }
    }
    let mut r = den
        .lu()
        .solve(&num)
        .ok_or_else(|| Error::Numerical("Pade denominator is singular".into()))?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    if r.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Numerical("matrix exponential overflowed".into()));
    }
    Ok(r)
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Unitary factor of the polar decomposition, by Newton iteration.
fn unitary_factor(m: &CMatrix) -> Result<CMatrix> {
    let mut u = m.clone();
    for _ in 0..60 {
        let inv = u
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Numerical("singular matrix in polar projection".into()))?;
        let next = (&u + inv.adjoint()) * c(0.5, 0.0);
        let change = max_abs(&(&next - &u));
        u = next;
        if change < 1e-15 {
            break;
        }
    }
    Ok(u)
}

impl LieAlgebra {
    pub fn group_kind(&self) -> Result<GroupKind> {
        Ok(self.representation()?.kind())
    }

    /// Size of the defining matrices.
    pub fn rep_size(&self) -> Result<usize> {
        Ok(self.representation()?.size())
    }

    pub fn matrix_of(&self, x: &AlgebraElement) -> Result<CMatrix> {
        Ok(self.representation()?.matrix_of(x))
    }

    pub fn matrix_of_complex(&self, z: &ComplexAlgebraElement) -> Result<CMatrix> {
        Ok(self.representation()?.matrix_of_complex(z))
    }

    /// Coordinates of a matrix in the complexified basis.
    pub fn decompose(&self, m: &CMatrix) -> Result<ComplexAlgebraElement> {
        Ok(self.representation()?.decompose(m))
    }

    pub fn identity(&self) -> Result<GroupElement> {
        Ok(GroupElement::identity(self.rep_size()?))
    }

    pub fn exp_real(&self, x: &AlgebraElement) -> Result<GroupElement> {
        Ok(GroupElement::from_matrix(expm(&self.matrix_of(x)?)?))
    }

    pub fn exp_matrix(&self, z: &ComplexAlgebraElement) -> Result<GroupElement> {
        Ok(GroupElement::from_matrix(expm(&self.matrix_of_complex(z)?)?))
    }

    /// Membership defect for the compact group `K`.
    pub fn compact_residual(&self, g: &GroupElement) -> Result<f64> {
        let rep = self.representation()?;
        let m = g.matrix();
        if m.nrows() != rep.size() {
            return Err(Error::DimensionMismatch { expected: rep.size(), found: m.nrows() });
        }
        let n = m.nrows();
        let ident = CMatrix::identity(n, n);
        Ok(match rep.kind() {
            GroupKind::SpecialUnitary => {
                max_abs(&(m.adjoint() * m - ident)) + (m.determinant() - c(1.0, 0.0)).norm()
            }
            GroupKind::SpecialOrthogonal => {
                let imag = m.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
                imag + max_abs(&(m.transpose() * m - ident)) + (m.determinant() - c(1.0, 0.0)).norm()
            }
            GroupKind::Torus => {
                let mut worst = 0.0f64;
                for a in 0..n {
                    for b in 0..n {
                        let v = m[(a, b)];
                        worst = worst.max(if a == b { (v.norm() - 1.0).abs() } else { v.norm() });
                    }
                }
                worst
            }
        })
    }

    /// Membership defect for the complexified group `G`.
    pub fn complex_residual(&self, g: &GroupElement) -> Result<f64> {
        let rep = self.representation()?;
        let m = g.matrix();
        if m.nrows() != rep.size() {
            return Err(Error::DimensionMismatch { expected: rep.size(), found: m.nrows() });
        }
        let n = m.nrows();
        let scale = m.norm().max(1.0).powi(2);
        Ok(match rep.kind() {
            GroupKind::SpecialUnitary => (m.determinant() - c(1.0, 0.0)).norm() / scale,
            GroupKind::SpecialOrthogonal => {
                (max_abs(&(m.transpose() * m - CMatrix::identity(n, n))) + (m.determinant() - c(1.0, 0.0)).norm())
                    / scale
            }
            GroupKind::Torus => {
                let mut worst = 0.0f64;
                for a in 0..n {
                    for b in 0..n {
                        if a != b {
                            worst = worst.max(m[(a, b)].norm());
                        } else if m[(a, a)].norm() == 0.0 {
                            worst = f64::INFINITY;
                        }
                    }
                }
                worst
            }
        })
    }

    pub fn check_compact(&self, g: &GroupElement) -> Result<()> {
        let residual = self.compact_residual(g)?;
        if residual > GROUP_TOL {
            return Err(Error::NotInGroup { group: "K", residual });
        }
        Ok(())
    }

    pub fn check_complex(&self, g: &GroupElement) -> Result<()> {
        let residual = self.complex_residual(g)?;
        if residual > GROUP_TOL {
            return Err(Error::NotInGroup { group: "G", residual });
        }
        Ok(())
    }

    /// Nearest element of `K` to a matrix that is close to it.
    pub fn project_compact(&self, m: &CMatrix) -> Result<GroupElement> {
        let rep = self.representation()?;
        let out = match rep.kind() {
            GroupKind::SpecialUnitary => {
                let u = unitary_factor(m)?;
                let n = u.nrows();
                let phase = u.determinant().powf(1.0 / n as f64);
                u / phase
            }
            GroupKind::SpecialOrthogonal => unitary_factor(&m.map(|v| c(v.re, 0.0)))?.map(|v| c(v.re, 0.0)),
            GroupKind::Torus => {
                let n = m.nrows();
                CMatrix::from_fn(n, n, |a, b| if a == b { m[(a, a)] / m[(a, a)].norm() } else { c(0.0, 0.0) })
            }
        };
        Ok(GroupElement::from_matrix(out))
    }

    /// Unique factorisation `g = k exp(iX)` with `k` in `K` and `X` in the
    /// real algebra (matrix polar decomposition).
    pub fn kp_decompose(&self, g: &GroupElement) -> Result<(GroupElement, AlgebraElement)> {
        self.check_complex(g)?;
        let m = g.matrix();
        let gram = m.adjoint() * m;
        let eig = SymmetricEigen::new(gram);
        let lmin = eig.eigenvalues.min();
        if !(lmin > 1e-300) {
            return Err(Error::Branch(format!("positive factor has eigenvalue {lmin:e}")));
        }
        let v = &eig.eigenvectors;
        let diag = |f: &dyn Fn(f64) -> f64| {
            let d = CMatrix::from_diagonal(&eig.eigenvalues.map(|l| c(f(l), 0.0)));
            v * d * v.adjoint()
        };
        let log_p = diag(&|l| 0.5 * l.ln());
        let p_inv = diag(&|l| l.powf(-0.5));
        let x = self.decompose(&(log_p * (-I)))?;
        if x.im.coeff_norm() > 1e-8 * (1.0 + x.re.coeff_norm()) {
            return Err(Error::NotInGroup { group: "G", residual: x.im.coeff_norm() });
        }
        let k = GroupElement::from_matrix(m * p_inv);
        let residual = self.compact_residual(&k)?;
        if residual > GROUP_TOL {
            return Err(Error::NotInGroup { group: "K", residual });
        }
        Ok((self.project_compact(k.matrix())?, x.re))
    }

    /// Real matrix of `Ad_g` on coefficient vectors, without a membership check.
    pub fn adjoint_matrix(&self, g: &GroupElement) -> Result<DMatrix<f64>> {
        let rep = self.representation()?;
        let gi = g.inverse()?;
        let d = self.dim();
        let mut out = DMatrix::zeros(d, d);
        for j in 0..d {
            let col = rep.decompose(&(g.matrix() * &rep.basis[j] * gi.matrix()));
            out.set_column(j, col.re.coeffs());
        }
        Ok(out)
    }

    /// `Ad_g X = g X g^{-1}` for `g` in `K`.
    pub fn ad_action(&self, g: &GroupElement, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_compact(g)?;
        let gi = g.inverse()?;
        Ok(self.decompose(&(g.matrix() * self.matrix_of(x)? * gi.matrix()))?.re)
    }

    /// `Ad_g Z` for `g` in `G` acting on the complexified algebra.
    pub fn ad_action_complex(&self, g: &GroupElement, z: &ComplexAlgebraElement) -> Result<ComplexAlgebraElement> {
        self.check_complex(g)?;
        let gi = g.inverse()?;
        self.decompose(&(g.matrix() * self.matrix_of_complex(z)? * gi.matrix()))
    }

    /// Logarithm of an element of `K` close to the identity (`|k - 1| < 1/2`).
    pub fn log_near_identity(&self, k: &GroupElement) -> Result<AlgebraElement> {
        let n = k.size();
        let e = k.matrix() - CMatrix::identity(n, n);
        if e.norm() >= 0.5 {
            return Err(Error::Branch(format!("element too far from identity (|k - 1| = {})", e.norm())));
        }
        let mut term = e.clone();
        let mut sum = e.clone();
        for j in 2..200 {
            term = &term * &e;
            let t = &term * c(if j % 2 == 0 { -1.0 } else { 1.0 } / j as f64, 0.0);
            let size = t.norm();
            sum += t;
            if size < 1e-18 {
                break;
            }
        }
        Ok(self.decompose(&sum)?.re)
    }
}
