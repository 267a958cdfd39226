use num_complex::Complex;

use super::series::FormalPowerSeries;
use crate::error::Result;
use crate::qcore::Base;
use crate::scalar::{one, zero, Real};

/// One term `c * x^m * sigma_q^l`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpTerm<T: Real> {
    pub x_power: u32,
    pub shift: u32,
    pub coeff: Complex<T>,
}

/// Sparse linear q-difference operator `sum c x^m sigma_q^l` with
/// `sigma_q f(x) = f(qx)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QDiffOperator<T: Real> {
    terms: Vec<OpTerm<T>>,
}

impl<T: Real> QDiffOperator<T> {
    pub fn new(terms: Vec<OpTerm<T>>) -> Self {
        Self { terms }
    }

    pub fn from_triples(terms: &[(u32, u32, Complex<T>)]) -> Self {
        Self::new(
            terms
                .iter()
                .map(|&(x_power, shift, coeff)| OpTerm { x_power, shift, coeff })
                .collect(),
        )
    }

    pub fn terms(&self) -> &[OpTerm<T>] {
        &self.terms
    }

    /// `K x sigma^2 - sigma + 1`.
    pub fn second_order(k: Complex<T>) -> Self {
        Self::from_triples(&[(1, 2, k), (0, 1, -one::<T>()), (0, 0, one())])
    }

    /// Ramanujan operator `q x sigma_q^2 - sigma_q + 1`.
    pub fn ramanujan(base: Base<T>) -> Self {
        Self::second_order(base.q())
    }

    /// q-Airy operator `sigma_q^2 + x sigma_q - 1`.
    pub fn qairy() -> Self {
        Self::from_triples(&[(0, 2, one()), (1, 1, one()), (0, 0, -one::<T>())])
    }

    /// The operator after `x = t^2`: each `x^m sigma_q^l` becomes
    /// `t^{2m} sigma_p^l` with `p^2 = q`.
    pub fn covered(&self) -> Self {
        Self::new(
            self.terms
                .iter()
                .map(|t| OpTerm { x_power: 2 * t.x_power, ..*t })
                .collect(),
        )
    }

    /// Coefficientwise action: `[x^n] x^m sigma^l f = a_{n-m} q^{l(n-m)}`.
    pub fn apply(&self, f: &FormalPowerSeries<T>, base: Base<T>) -> FormalPowerSeries<T> {
        let mut out = FormalPowerSeries::zeros(f.order());
        for t in &self.terms {
            let m = t.x_power as usize;
            let part = FormalPowerSeries::from_fn(f.order(), |n| {
                if n < m {
                    zero()
                } else {
                    t.coeff * f.coeff(n - m) * base.pow(t.shift as i64 * (n - m) as i64)
                }
            });
            out = out.add(&part);
        }
        out
    }

    /// `sum c x^m u(q^l x)`; zero exactly when `u` solves the equation at `x`.
    pub fn apply_fn(
        &self,
        base: Base<T>,
        x: Complex<T>,
        mut u: impl FnMut(Complex<T>) -> Result<Complex<T>>,
    ) -> Result<Complex<T>> {
        let mut acc = zero();
        for t in &self.terms {
            acc = acc + t.coeff * x.powi(t.x_power as i32) * u(base.pow(t.shift as i64) * x)?;
        }
        Ok(acc)
    }

    /// Largest modulus among the individual terms of [`Self::apply_fn`],
    /// the natural scale for a residual.
    pub fn residual_scale(
        &self,
        base: Base<T>,
        x: Complex<T>,
        mut u: impl FnMut(Complex<T>) -> Result<Complex<T>>,
    ) -> Result<T> {
        let mut s = T::zero();
        for t in &self.terms {
            let v = t.coeff * x.powi(t.x_power as i32) * u(base.pow(t.shift as i64) * x)?;
            s = s.max(v.norm());
        }
        Ok(s)
    }
}
