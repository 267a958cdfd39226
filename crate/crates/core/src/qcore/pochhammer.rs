//! q-shifted factorials `(a;q)_n` and `(a;q)_inf`.

use num_complex::Complex;

use super::base::{Base, EvalConfig};
use crate::error::{QError, Result};
use crate::scalar::{one, Real, Scaled};

/// A factor `1 - a q^k` closer than this to zero marks `a = q^{-k}`.
pub const ZERO_FACTOR_TOL: f64 = 1e-12;

/// `(a;q)_n = (1-a)(1-aq)...(1-aq^{n-1})`, exactly 1 for `n = 0`.
pub fn qpochhammer_finite<T: Real>(a: Complex<T>, base: Base<T>, n: usize) -> Complex<T> {
    let q = base.q();
    let mut p = one();
    let mut aqk = a;
    for _ in 0..n {
        p = p * (one::<T>() - aqk);
        aqk = aqk * q;
    }
    p
}

/// Product of several finite factorials `(a_1,...,a_m;q)_n`.
pub fn qpochhammer_finite_many<T: Real>(a: &[Complex<T>], base: Base<T>, n: usize) -> Complex<T> {
    a.iter()
        .fold(one(), |acc, &ai| acc * qpochhammer_finite(ai, base, n))
}

/// Result of an infinite product evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QProduct<T: Real> {
    pub scaled: Scaled<T>,
    /// Number of factors multiplied.
    pub factors: usize,
    /// `Some(m)` when `a = q^{-m}` within [`ZERO_FACTOR_TOL`]; the value is
    /// then exactly zero.
    pub zero_at: Option<usize>,
}

impl<T: Real> QProduct<T> {
    pub fn value(&self) -> Complex<T> {
        self.scaled.value()
    }

    pub fn is_zero(&self) -> bool {
        self.zero_at.is_some()
    }
}

/// `(a;q)_inf`, truncated once `|a q^k| < tol` for `tail_window`
/// consecutive `k`.
pub fn qpochhammer_infinite<T: Real>(
    a: Complex<T>,
    base: Base<T>,
    cfg: &EvalConfig<T>,
) -> Result<QProduct<T>> {
    let q = base.q();
    let zero_tol = T::lit(ZERO_FACTOR_TOL);
    let mut acc = Scaled::one();
    let mut aqk = a;
    let mut small = 0;
    let mut zero_at = None;
    for k in 0..cfg.max_terms {
        let factor = one::<T>() - aqk;
        if zero_at.is_none() && factor.norm() < zero_tol {
            zero_at = Some(k);
        }
        acc = acc.mul_complex(factor);
        if aqk.norm() < cfg.tol {
            small += 1;
            if small >= cfg.tail_window {
                if zero_at.is_some() {
                    acc = Scaled::from_complex(Complex::new(T::zero(), T::zero()));
                }
                return Ok(QProduct {
                    scaled: acc,
                    factors: k + 1,
                    zero_at,
                });
            }
        } else {
            small = 0;
        }
        aqk = aqk * q;
    }
    Err(QError::NonConvergence {
        context: format!("({a};q)_inf"),
        terms: cfg.max_terms,
    })
}

/// Product `(a_1,...,a_m;q)_inf` kept in scaled form.
pub fn qpochhammer_infinite_many<T: Real>(
    a: &[Complex<T>],
    base: Base<T>,
    cfg: &EvalConfig<T>,
) -> Result<Scaled<T>> {
    let mut acc = Scaled::one();
    for &ai in a {
        acc = acc.mul(qpochhammer_infinite(ai, base, cfg)?.scaled);
    }
    Ok(acc)
}
