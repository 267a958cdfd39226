//! The two q-exponentials `e_q(x) = 1/(x;q)_inf` and `E_q(x) = (-x;q)_inf`.

use num_complex::Complex;

use super::base::{spiral_distance, Base, EvalConfig};
use super::hyper::sum_by_ratio;
use super::pochhammer::qpochhammer_infinite;
use crate::error::{QError, Result};
use crate::scalar::{one, Real, Scaled};

/// Relative distance to a pole `q^{-m}` of `e_q` that is reported as a hit.
pub const POLE_TOL: f64 = 1e-12;

fn check_pole<T: Real>(base: Base<T>, x: Complex<T>, tol: T) -> Result<()> {
    let (n, d) = spiral_distance(x, one(), base.q());
    if n <= 0 && d < tol {
        return Err(QError::Pole(format!(
            "e_q(x) has a pole at x = q^-{} (x = {x})",
            -n
        )));
    }
    Ok(())
}

/// `e_q(x)` in scaled form, continued to the whole plane minus `q^{-N}`.
pub fn eq_small_scaled<T: Real>(
    base: Base<T>,
    x: Complex<T>,
    cfg: &EvalConfig<T>,
) -> Result<Scaled<T>> {
    check_pole(base, x, T::lit(POLE_TOL))?;
    Ok(qpochhammer_infinite(x, base, cfg)?.scaled.recip())
}

/// Small q-exponential `e_q(x) = sum x^n/(q;q)_n = 1/(x;q)_inf`.
///
/// Always evaluated through the product, which is the meromorphic
/// continuation of the series outside the unit disc.
pub fn eq_small<T: Real>(base: Base<T>, x: Complex<T>, cfg: &EvalConfig<T>) -> Result<Complex<T>> {
    Ok(eq_small_scaled(base, x, cfg)?.value())
}

/// Series `sum x^n/(q;q)_n`, valid for `|x| < 1` only.
pub fn eq_series<T: Real>(base: Base<T>, x: Complex<T>, cfg: &EvalConfig<T>) -> Result<Complex<T>> {
    if x.norm() >= T::one() {
        return Err(QError::ConvergenceRadius(format!("e_q series at |x| = {}", x.norm())));
    }
    let q = base.q();
    let mut qn = one::<T>();
    sum_by_ratio(cfg, "e_q series", |_| {
        qn = qn * q;
        x / (one::<T>() - qn)
    })
}

/// Big q-exponential `E_q(x) = (-x;q)_inf`, entire.
#[allow(non_snake_case)]
pub fn Eq_big<T: Real>(base: Base<T>, x: Complex<T>, cfg: &EvalConfig<T>) -> Result<Complex<T>> {
    Ok(qpochhammer_infinite(-x, base, cfg)?.value())
}

/// Series `sum q^{n(n-1)/2} x^n/(q;q)_n` for `E_q`.
#[allow(non_snake_case)]
pub fn Eq_series<T: Real>(base: Base<T>, x: Complex<T>, cfg: &EvalConfig<T>) -> Result<Complex<T>> {
    let q = base.q();
    let mut qn = one::<T>();
    sum_by_ratio(cfg, "E_q series", |_| {
        let t = qn * x;
        qn = qn * q;
        t / (one::<T>() - qn)
    })
}

/// The e-series with base `1/q`: `sum x^n / prod_{k=1}^n (1 - q^{-k})`.
///
/// Entire in `x`; equals `E_q(-qx)`.
pub fn eq_inverse_base_series<T: Real>(
    base: Base<T>,
    x: Complex<T>,
    cfg: &EvalConfig<T>,
) -> Result<Complex<T>> {
    let qi = base.q().inv();
    let mut qk = one::<T>();
    sum_by_ratio(cfg, "e_{1/q} series", |_| {
        qk = qk * qi;
        x / (one::<T>() - qk)
    })
}
