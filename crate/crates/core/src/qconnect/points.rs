//! Seeded generation of evaluation points away from excluded spirals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::formulas::{c, C};
use crate::qcore::spiral_distance;

/// Minimum relative distance from any excluded spiral.
pub const EXCLUSION_MARGIN: f64 = 1e-3;

/// The spiral `center * step^Z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exclusion {
    pub center: C,
    pub step: C,
}

impl Exclusion {
    pub fn new(center: C, step: C) -> Self {
        Self { center, step }
    }

    pub fn distance(&self, x: C) -> f64 {
        spiral_distance(x, self.center, self.step).1
    }
}

/// Annulus `rmin <= |x| <= rmax` sampled log-uniformly in modulus and
/// uniformly in argument.
#[derive(Clone, Debug)]
pub struct PointGenerator {
    rng: ChaCha8Rng,
    seed: u64,
}

impl PointGenerator {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn annulus(&mut self, n: usize, rmin: f64, rmax: f64, exclude: &[Exclusion]) -> Vec<C> {
        self.sector(n, rmin, rmax, std::f64::consts::PI, exclude)
    }

    /// Like [`Self::annulus`] but with `|arg x| <= max_arg`.
    pub fn sector(&mut self, n: usize, rmin: f64, rmax: f64, max_arg: f64, exclude: &[Exclusion]) -> Vec<C> {
        let mut out = Vec::with_capacity(n);
        let (lo, hi) = (rmin.ln(), rmax.ln());
        while out.len() < n {
            let r = self.rng.gen_range(lo..=hi).exp();
            let a = self.rng.gen_range(-max_arg..=max_arg);
            let x = C::from_polar(r, a);
            if exclude.iter().all(|e| e.distance(x) >= EXCLUSION_MARGIN) {
                out.push(x);
            }
        }
        out
    }
}

/// Spirals to avoid for the thetas of the named coefficient families.
pub fn theta_zero_spiral(q: C) -> Exclusion {
    Exclusion::new(c(-1.0), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_excluding() {
        let q = c(0.5);
        let ex = [theta_zero_spiral(q)];
        let a = PointGenerator::new(7).annulus(50, 0.2, 5.0, &ex);
        let b = PointGenerator::new(7).annulus(50, 0.2, 5.0, &ex);
        assert_eq!(a, b);
        assert!(a.iter().all(|x| x.norm() >= 0.2 - 1e-12 && x.norm() <= 5.0 + 1e-12));
        assert!(a.iter().all(|&x| ex[0].distance(x) >= EXCLUSION_MARGIN));
        assert_ne!(a, PointGenerator::new(8).annulus(50, 0.2, 5.0, &ex));
    }
}
