use num_complex::Complex;

use crate::error::{QError, Result};
use crate::scalar::{cpow, Real};

/// The deformation parameter `q`, guaranteed to satisfy `0 < |q| < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Base<T: Real> {
    q: Complex<T>,
}

impl<T: Real> Base<T> {
    pub fn new(q: Complex<T>) -> Result<Self> {
        let m = q.norm();
        if !m.is_finite() || m <= T::zero() || m >= T::one() {
            return Err(QError::InvalidBase(format!(
                "|q| = {m} must satisfy 0 < |q| < 1"
            )));
        }
        Ok(Self { q })
    }

    pub fn real(q: T) -> Result<Self> {
        Self::new(Complex::new(q, T::zero()))
    }

    #[inline]
    pub fn q(&self) -> Complex<T> {
        self.q
    }

    /// `q^n` for any integer `n`.
    #[inline]
    pub fn pow(&self, n: i64) -> Complex<T> {
        cpow(self.q, n)
    }

    /// The base `q^s` for `s >= 1`.
    pub fn power(&self, s: u32) -> Self {
        assert!(s >= 1, "base power must be positive");
        Self {
            q: self.q.powi(s as i32),
        }
    }

    pub fn squared(&self) -> Self {
        self.power(2)
    }

    pub fn modulus(&self) -> T {
        self.q.norm()
    }
}

/// Truncation policy for series and infinite products.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig<T: Real> {
    /// A term (or `|a q^k|` for products) below `tol` relative to the
    /// running scale counts as negligible.
    pub tol: T,
    pub max_terms: usize,
    /// Consecutive negligible terms required before stopping.
    pub tail_window: usize,
}

impl<T: Real> Default for EvalConfig<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-16),
            max_terms: 10_000,
            tail_window: 3,
        }
    }
}

impl<T: Real> EvalConfig<T> {
    pub fn new(tol: T, max_terms: usize, tail_window: usize) -> Result<Self> {
        if !(tol > T::zero()) || max_terms == 0 || tail_window == 0 {
            return Err(QError::InvalidConfig(format!(
                "tol = {tol}, max_terms = {max_terms}, tail_window = {tail_window}"
            )));
        }
        Ok(Self {
            tol,
            max_terms,
            tail_window,
        })
    }
}

/// Relative distance from `x` to the spiral `center * Q^Z`, together with
/// the index of the closest spiral point.
///
/// Returns `(n, d)` with `d = |x - center Q^n| / |center Q^n|` minimal.
pub fn spiral_distance<T: Real>(x: Complex<T>, center: Complex<T>, q: Complex<T>) -> (i64, T) {
    if center.norm() == T::zero() {
        return (0, T::infinity());
    }
    if x.norm() == T::zero() {
        return (0, T::one());
    }
    let ratio = x / center;
    let guess = (ratio.norm().ln() / q.norm().ln()).round();
    let n0 = guess.to_i64().unwrap_or(0);
    let mut best = (n0, T::infinity());
    for n in (n0 - 2)..=(n0 + 2) {
        let p = center * cpow(q, n);
        let d = (x - p).norm() / p.norm();
        if d < best.1 {
            best = (n, d);
        }
    }
    best
}
