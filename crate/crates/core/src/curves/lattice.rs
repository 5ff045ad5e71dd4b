//! Period lattices, the stabiliser `Γ` of a base point and the
//! factorisation of scalar-type maps through `C / Λ`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{ComplexAlgebraElement, GroupElement, LieAlgebra};

/// Periods of a holomorphic 1-form on the surface.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodData {
    pub periods: Vec<Complex64>,
}

impl PeriodData {
    pub fn new(periods: Vec<Complex64>) -> Self {
        Self { periods }
    }

    /// `ζ = c dz` on `C / (Z + τZ)` has periods `c` and `cτ`.
    pub fn torus(c: Complex64, tau: Complex64) -> Self {
        Self { periods: vec![c, c * tau] }
    }
}

/// A subgroup given by generators. Membership is decided by enumerating
/// words up to `closure_depth`; the answer is `NotMember` only when the
/// enumeration closes up, i.e. the group is finite and fully listed.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    pub generators: Vec<GroupElement>,
    pub closure_depth: usize,
    pub tolerance: f64,
}

/// Largest number of distinct elements kept during enumeration.
pub const MAX_ENUMERATED: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Membership {
    /// Signed 1-based generator indices; `-i` stands for the inverse.
    Member { word: Vec<i32> },
    NotMember,
    Undecided,
}

impl StabilizerGroup {
    /// Checks that every generator lies in the complex group of `alg`.
    pub fn new(alg: &LieAlgebra, generators: Vec<GroupElement>, closure_depth: usize, tolerance: f64) -> Result<Self> {
        for g in &generators {
            alg.check_complex(g)?;
        }
        Ok(Self { generators, closure_depth, tolerance })
    }

    /// The trivial group `{1}` in an `n × n` representation.
    pub fn trivial(n: usize) -> Self {
        Self { generators: vec![GroupElement::identity(n)], closure_depth: 1, tolerance: 1e-9 }
    }

    fn close(&self, a: &GroupElement, b: &GroupElement) -> bool {
        a.distance(b) <= self.tolerance * (1.0 + b.norm())
    }

    pub fn membership(&self, g: &GroupElement) -> Result<Membership> {
        let n = g.size();
        if self.generators.iter().any(|h| h.size() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: self.generators[0].size() });
        }
        let mut letters = Vec::with_capacity(2 * self.generators.len());
        for (i, h) in self.generators.iter().enumerate() {
            letters.push((i as i32 + 1, h.clone()));
            letters.push((-(i as i32 + 1), h.inverse()?));
        }
        let id = GroupElement::identity(n);
        if self.close(&id, g) {
            return Ok(Membership::Member { word: Vec::new() });
        }
        let mut known: Vec<GroupElement> = vec![id.clone()];
        let mut frontier: Vec<(GroupElement, Vec<i32>)> = vec![(id, Vec::new())];
        for _ in 0..self.closure_depth {
            let mut next = Vec::new();
            for (elem, word) in &frontier {
                for (letter, h) in &letters {
                    let cand = elem * h;
                    if known.iter().any(|k| self.close(&cand, k)) {
                        continue;
                    }
                    let mut w = word.clone();
                    w.push(*letter);
                    if self.close(&cand, g) {
                        return Ok(Membership::Member { word: w });
                    }
                    known.push(cand.clone());
                    next.push((cand, w));
                    if known.len() > MAX_ENUMERATED {
                        return Ok(Membership::Undecided);
                    }
                }
            }
            if next.is_empty() {
                return Ok(Membership::NotMember);
            }
            frontier = next;
        }
        Ok(Membership::Undecided)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum LatticeVerdict {
    /// Every `exp(Z w)` lies in `Γ`; one witness word per period.
    Holds { witnesses: Vec<(Complex64, Vec<i32>)> },
    Fails { period: Complex64 },
    Undecided { period: Complex64 },
}

/// `exp(Z w) ∈ Γ` for each period `w`.
pub fn lattice_condition(
    alg: &LieAlgebra,
    z: &ComplexAlgebraElement,
    periods: &PeriodData,
    gamma: &StabilizerGroup,
) -> Result<LatticeVerdict> {
    let mut witnesses = Vec::new();
    for &w in &periods.periods {
        let g = alg.exp_matrix(&z.scale(w))?;
        match gamma.membership(&g)? {
            Membership::Member { word } => witnesses.push((w, word)),
            Membership::NotMember => return Ok(LatticeVerdict::Fails { period: w }),
            Membership::Undecided => return Ok(LatticeVerdict::Undecided { period: w }),
        }
    }
    Ok(LatticeVerdict::Holds { witnesses })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Factorization {
    /// `f` is constant.
    Constant { reason: String },
    /// `f` factors through `C / (b₁ Z + b₂ Z)` with this reduced basis.
    Elliptic { basis: [Complex64; 2] },
    Rejected { reason: String },
    Undecided { reason: String },
}

/// Relative rational-approximation error separating rational from irrational
/// real coordinates, with denominators up to [`MAX_DENOMINATOR`].
pub const RATIONAL_TOL: f64 = 1e-10;
pub const IRRATIONAL_TOL: f64 = 1e-8;
pub const MAX_DENOMINATOR: i64 = 1000;

/// Best rational approximation `p/q` with `q ≤ max_q`, by continued fractions.
pub fn best_rational(x: f64, max_q: i64) -> (i64, i64) {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    let mut best = (x.round() as i64, 1i64);
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > max_q {
            break;
        }
        best = (h2, k2);
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac.abs() < 1e-14 {
            break;
        }
        r = 1.0 / frac;
    }
    best
}

enum Rationality {
    Rational(i64, i64),
    Irrational,
    Unclear,
}

fn classify_real(x: f64) -> Rationality {
    let (p, q) = best_rational(x, MAX_DENOMINATOR);
    let err = (x - p as f64 / q as f64).abs() / x.abs().max(1.0);
    if err <= RATIONAL_TOL {
        Rationality::Rational(p, q)
    } else if err > IRRATIONAL_TOL {
        Rationality::Irrational
    } else {
        Rationality::Unclear
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Basis of the sublattice of `Z²` spanned by `vs`, in Hermite form
/// `[(a, b), (0, c)]`, or `None` if the span has rank below two.
fn lattice_basis_2d(vs: &[(i128, i128)]) -> Option<[(i128, i128); 2]> {
    let mut pivot: Option<(i128, i128)> = None;
    let mut second: i128 = 0;
    for &v in vs {
        let mut v = v;
        if let Some(mut p) = pivot {
            // Euclid on first coordinates
            while v.0 != 0 {
                let q = p.0 / v.0;
                p = (p.0 - q * v.0, p.1 - q * v.1);
                std::mem::swap(&mut p, &mut v);
            }
            pivot = Some(p);
            second = gcd(second, v.1);
        } else if v.0 != 0 {
            pivot = Some(v);
        } else {
            second = gcd(second, v.1);
        }
    }
    let p = pivot?;
    if second == 0 {
        return None;
    }
    let p = if p.0 < 0 { (-p.0, -p.1) } else { p };
    Some([(p.0, p.1.rem_euclid(second)), (0, second)])
}

/// Lagrange–Gauss reduction, shortest vector first and `Im(b₂/b₁) > 0`.
pub fn reduce_basis(b1: Complex64, b2: Complex64) -> [Complex64; 2] {
    let (mut u, mut v) = if b1.norm_sqr() <= b2.norm_sqr() { (b1, b2) } else { (b2, b1) };
    loop {
        let mu = ((v * u.conj()).re / u.norm_sqr()).round();
        v -= u * mu;
        if v.norm_sqr() >= u.norm_sqr() * (1.0 - 1e-12) {
            break;
        }
        std::mem::swap(&mut u, &mut v);
    }
    if (v / u).im < 0.0 {
        v = -v;
    }
    [u, v]
}

/// The pair of periods closest to orthogonal.
fn widest_pair(ws: &[Complex64]) -> (Complex64, Complex64) {
    let mut best = (0, 1, -1.0);
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            let s = (ws[i].conj() * ws[j]).im.abs() / (ws[i].norm() * ws[j].norm());
            if s > best.2 {
                best = (i, j, s);
            }
        }
    }
    (ws[best.0], ws[best.1])
}

/// Decides whether `f = ψ(p₀, exp(Z ∫ζ))` is constant, factors through an
/// elliptic curve, or fails to descend, from the periods of `ζ` and the
/// stabiliser `Γ`.
pub fn scalar_factorization(
    alg: &LieAlgebra,
    z: &ComplexAlgebraElement,
    periods: &PeriodData,
    gamma: &StabilizerGroup,
) -> Result<Factorization> {
    let scale = periods.periods.iter().map(|w| w.norm()).fold(0.0, f64::max);
    let ws: Vec<Complex64> = periods.periods.iter().copied().filter(|w| w.norm() > 1e-12 * scale).collect();
    if ws.is_empty() {
        return Ok(Factorization::Constant { reason: "trivial period group".into() });
    }
    match lattice_condition(alg, z, periods, gamma)? {
        LatticeVerdict::Holds { .. } => {}
        LatticeVerdict::Fails { period } => {
            return Ok(Factorization::Rejected { reason: format!("exp(Z·{period}) is not in the stabiliser") });
        }
        LatticeVerdict::Undecided { period } => {
            return Ok(Factorization::Undecided { reason: format!("membership of exp(Z·{period}) undecided") });
        }
    }

    // real rank of the period span
    let m = nalgebra::DMatrix::from_fn(2, ws.len(), |r, c| if r == 0 { ws[c].re } else { ws[c].im });
    let sv = m.singular_values();
    let rank = if sv[1] > 1e-9 * sv[0] {
        2
    } else if sv[1] < 1e-12 * sv[0] {
        1
    } else {
        return Ok(Factorization::Undecided { reason: "real rank of the periods is ambiguous".into() });
    };

    // coordinates of all periods in a basis chosen among them
    let coords: Vec<Vec<f64>> = if rank == 1 {
        let b = *ws.iter().max_by(|a, b| a.norm().total_cmp(&b.norm())).expect("non-empty");
        ws.iter().map(|w| vec![(w / b).re]).collect()
    } else {
        let (b1, b2) = widest_pair(&ws);
        let det = b1.re * b2.im - b1.im * b2.re;
        ws.iter().map(|w| vec![(w.re * b2.im - w.im * b2.re) / det, (b1.re * w.im - b1.im * w.re) / det]).collect()
    };

    let mut rational = Vec::with_capacity(coords.len());
    let mut unclear = false;
    for c in &coords {
        let mut row = Vec::with_capacity(c.len());
        for &x in c {
            match classify_real(x) {
                Rationality::Rational(p, q) => row.push((p, q)),
                Rationality::Irrational => {
                    return Ok(Factorization::Constant {
                        reason: "periods are dense along a real direction".into(),
                    });
                }
                Rationality::Unclear => unclear = true,
            }
        }
        rational.push(row);
    }
    if unclear {
        return Ok(Factorization::Undecided { reason: "rationality of a period ratio is unclear".into() });
    }
    let mut denom: i128 = 1;
    for &(_, q) in rational.iter().flatten() {
        denom = denom / gcd(denom, q as i128) * q as i128;
        if denom > 1 << 60 {
            return Ok(Factorization::Undecided { reason: "period denominators too large".into() });
        }
    }
    let ints: Vec<Vec<i128>> =
        rational.iter().map(|row| row.iter().map(|&(p, q)| p as i128 * (denom / q as i128)).collect()).collect();

    if rank == 1 {
        return Ok(Factorization::Constant { reason: "period group has rank one".into() });
    }
    let vs: Vec<(i128, i128)> = ints.iter().map(|r| (r[0], r[1])).collect();
    let basis = lattice_basis_2d(&vs).ok_or_else(|| Error::Numerical("rank-two periods gave a degenerate lattice".into()))?;
    let (b1, b2) = widest_pair(&ws);
    let d = denom as f64;
    let to_c = |v: (i128, i128)| (b1 * v.0 as f64 + b2 * v.1 as f64) / d;
    Ok(Factorization::Elliptic { basis: reduce_basis(to_c(basis[0]), to_c(basis[1])) })
}
