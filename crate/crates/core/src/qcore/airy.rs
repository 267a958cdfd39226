//! The Ramanujan function `A_q` and the q-Airy function `Ai_q`.

use num_complex::Complex;

use super::base::{Base, EvalConfig};
use super::hyper::sum_by_ratio;
use crate::error::{QError, Result};
use crate::scalar::{one, Real};

/// `A_q(x) = sum q^{n^2} (-x)^n / (q;q)_n`.
pub fn ramanujan_aq<T: Real>(base: Base<T>, x: Complex<T>, cfg: &EvalConfig<T>) -> Result<Complex<T>> {
    let q = base.q();
    let mut q2n1 = q;
    let mut qn = one::<T>();
    sum_by_ratio(cfg, "A_q series", |_| {
        let r = -x * q2n1;
        q2n1 = q2n1 * q * q;
        qn = qn * q;
        r / (one::<T>() - qn)
    })
}

/// `Ai_q(x) = sum q^{n(n-1)/2} x^n / ((-q;q)_n (q;q)_n)`.
pub fn qairy_aiq<T: Real>(base: Base<T>, x: Complex<T>, cfg: &EvalConfig<T>) -> Result<Complex<T>> {
    let q = base.q();
    let mut qn = one::<T>();
    sum_by_ratio(cfg, "Ai_q series", |_| {
        let r = x * qn;
        qn = qn * q;
        r / ((one::<T>() + qn) * (one::<T>() - qn))
    })
}

/// `exp(pi i log x / log q)` on the principal branches of both logarithms.
pub fn mirror_factor<T: Real>(base: Base<T>, x: Complex<T>) -> Result<Complex<T>> {
    if x.norm() == T::zero() {
        return Err(QError::Domain("log x needs x != 0".into()));
    }
    let i_pi = Complex::new(T::zero(), T::PI());
    Ok((i_pi * x.ln() / base.q().ln()).exp())
}

/// Second solution `exp(pi i log x / log q) Ai_q(-x)` of the q-Airy
/// equation.
pub fn aiq_mirror<T: Real>(base: Base<T>, x: Complex<T>, cfg: &EvalConfig<T>) -> Result<Complex<T>> {
    Ok(mirror_factor(base, x)? * qairy_aiq(base, -x, cfg)?)
}
