//! Seeded low-discrepancy sampling of chart boxes.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::gauge::Domain;

const PRIMES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Fraction of each box side kept clear on either end.
pub const MARGIN: f64 = 0.02;

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as f64;
    let (mut inv, mut f) = (0.0, 1.0 / b);
    while i > 0 {
        inv += (i % base as u64) as f64 * f;
        i /= base as u64;
        f /= b;
    }
    inv
}

/// Halton points with a Cranley–Patterson rotation drawn from `seed`.
#[derive(Clone, Debug)]
pub struct HaltonSampler {
    shift: Vec<f64>,
    index: u64,
}

impl HaltonSampler {
    pub fn new(dim: usize, seed: u64) -> Self {
        assert!(dim <= PRIMES.len(), "Halton sampler supports up to {} dimensions", PRIMES.len());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self { shift: (0..dim).map(|_| rng.random::<f64>()).collect(), index: 1 }
    }

    /// Next point of `[0, 1)^dim`.
    pub fn next_unit(&mut self) -> Vec<f64> {
        let i = self.index;
        self.index += 1;
        self.shift.iter().zip(PRIMES).map(|(s, p)| (radical_inverse(i, p) + s).fract()).collect()
    }

    /// Next point of the domain, away from its boundary.
    pub fn next_in(&mut self, domain: &Domain) -> Vec<f64> {
        let u: Vec<f64> = self.next_unit().into_iter().map(|t| MARGIN + (1.0 - 2.0 * MARGIN) * t).collect();
        domain.from_unit(&u)
    }
}

/// Generator for everything that is not a base point.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_inverse_base_two() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert_eq!(radical_inverse(6, 3), 2.0 / 9.0);
    }

    #[test]
    fn same_seed_same_points() {
        let d = Domain::cube(3, -1.0, 2.0);
        let mut a = HaltonSampler::new(3, 11);
        let mut b = HaltonSampler::new(3, 11);
        for _ in 0..20 {
            let p = a.next_in(&d);
            assert_eq!(p, b.next_in(&d));
            assert!(d.contains(&p));
        }
        assert_ne!(HaltonSampler::new(3, 12).next_unit(), HaltonSampler::new(3, 11).next_unit());
    }
}
