use num_complex::Complex;

use crate::scalar::{zero, Real};

/// Truncated power series `a_0 + a_1 x + ... + a_N x^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalPowerSeries<T: Real> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> FormalPowerSeries<T> {
    /// Panics on an empty coefficient list; order 0 needs one coefficient.
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a_0");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn zeros(order: usize) -> Self {
        Self::new(vec![zero(); order + 1])
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex<T>) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex<T> {
        self.coeffs.get(n).copied().unwrap_or_else(zero)
    }

    /// Coefficientwise map `a_n -> f(n, a_n)`.
    pub fn map(&self, mut f: impl FnMut(usize, Complex<T>) -> Complex<T>) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(n, &a)| f(n, a)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| self.coeffs[k] + other.coeffs[k])
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        self.map(|_, a| a * c)
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| {
            (0..=k).fold(zero(), |acc, i| acc + self.coeffs[i] * other.coeffs[k - i])
        })
    }

    /// Horner evaluation of the truncation.
    pub fn eval(&self, x: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(zero(), |acc, &a| acc * x + a)
    }

    /// Largest relative coefficient deviation
    /// `|a_n - b_n| / max(|a_n|, |b_n|)` over the common order (0 where both vanish).
    pub fn max_rel_deviation(&self, other: &Self) -> T {
        let n = self.order().min(other.order());
        (0..=n).fold(T::zero(), |m, k| {
            m.max(crate::scalar::rel_err(self.coeffs[k], other.coeffs[k]))
        })
    }
}
