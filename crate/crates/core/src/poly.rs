//! Small polynomial types: real multivariate (chart fields) and complex
//! univariate (curve forms).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One monomial `coeff * prod x_i^{powers[i]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    pub powers: Vec<u32>,
}

/// Real polynomial in `vars` variables, stored as a sum of monomials.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MultiPoly {
    pub vars: usize,
    pub terms: Vec<Monomial>,
}

impl MultiPoly {
    pub fn zero(vars: usize) -> Self {
        Self { vars, terms: Vec::new() }
    }

    pub fn constant(vars: usize, c: f64) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(c, vec![0; vars]);
        p
    }

    /// The coordinate function `x_i`.
    pub fn coordinate(vars: usize, i: usize) -> Self {
        let mut powers = vec![0; vars];
        powers[i] = 1;
        Self { vars, terms: vec![Monomial { coeff: 1.0, powers }] }
    }

    pub fn add_term(&mut self, coeff: f64, powers: Vec<u32>) {
        assert_eq!(powers.len(), self.vars, "monomial arity");
        if coeff == 0.0 {
            return;
        }
        if let Some(t) = self.terms.iter_mut().find(|t| t.powers == powers) {
            t.coeff += coeff;
        } else {
            self.terms.push(Monomial { coeff, powers });
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff * t.powers.iter().zip(x).map(|(&p, &xi)| xi.powi(p as i32)).product::<f64>())
            .sum()
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for t in &self.terms {
            if t.powers[i] > 0 {
                let mut powers = t.powers.clone();
                powers[i] -= 1;
                out.add_term(t.coeff * t.powers[i] as f64, powers);
            }
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.powers.iter().sum()).max().unwrap_or(0)
    }
}

/// Complex polynomial `sum_j c_j z^j`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoly {
    pub coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Antiderivative vanishing at the origin.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0)];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(j, c)| c / (j as f64 + 1.0)));
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(j, c)| c * j as f64).collect() }
    }

    /// `∫_a^b p(z) dz`, path independent.
    pub fn integral(&self, a: Complex64, b: Complex64) -> Complex64 {
        let big = self.antiderivative();
        big.eval(b) - big.eval(a)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Coefficients of `p(z0 + w)` in powers of `w`, for a coefficient list
/// whose entries live in any complex vector space (given as component
/// slices of equal length).
pub fn taylor_shift(coeffs: &[Vec<Complex64>], z0: Complex64) -> Vec<Vec<Complex64>> {
    let n = coeffs.len();
    if n == 0 {
        return Vec::new();
    }
    let width = coeffs[0].len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); width]; n];
    // binomial expansion of (z0 + w)^j
    for (j, c) in coeffs.iter().enumerate() {
        let mut binom = 1.0f64;
        for m in 0..=j {
            let factor = z0.powu((j - m) as u32) * binom;
            for (o, v) in out[m].iter_mut().zip(c) {
                *o += v * factor;
            }
            binom = binom * (j - m) as f64 / (m + 1) as f64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn multipoly_eval_and_partial() {
        // p = 3 x0^2 x1 - x1 + 2
        let mut p = MultiPoly::zero(2);
        p.add_term(3.0, vec![2, 1]);
        p.add_term(-1.0, vec![0, 1]);
        p.add_term(2.0, vec![0, 0]);
        assert_eq!(p.eval(&[2.0, 5.0]), 60.0 - 5.0 + 2.0);
        assert_eq!(p.partial(0).eval(&[2.0, 5.0]), 60.0);
        assert_eq!(p.partial(1).eval(&[2.0, 5.0]), 11.0);
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn complex_integral_matches_antiderivative() {
        let p = ComplexPoly::new(vec![c(1.0, 0.0), c(0.0, 2.0), c(3.0, 0.0)]);
        // ∫_0^i (1 + 2i z + 3 z^2) dz = i + i (i)^2 + (i)^3 = i - i - i
        let v = p.integral(c(0.0, 0.0), c(0.0, 1.0));
        assert!((v - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn taylor_shift_preserves_values() {
        let coeffs = vec![vec![c(1.0, 1.0)], vec![c(-2.0, 0.0)], vec![c(0.5, 0.0)], vec![c(0.0, 1.0)]];
        let z0 = c(0.3, -0.7);
        let shifted = taylor_shift(&coeffs, z0);
        let w = c(0.2, 0.1);
        let direct: Complex64 = coeffs.iter().enumerate().map(|(j, v)| v[0] * (z0 + w).powu(j as u32)).sum();
        let via: Complex64 = shifted.iter().enumerate().map(|(j, v)| v[0] * w.powu(j as u32)).sum();
        assert!((direct - via).norm() < 1e-14);
    }

    #[test]
    fn product_degrees_add() {
        let a = ComplexPoly::new(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let sq = a.mul(&a);
        assert_eq!(sq.coeffs, vec![c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
    }
}
