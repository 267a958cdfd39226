//! Jacobi theta function `theta_q(x) = sum_n q^{n(n-1)/2} x^n`.
//!
//! The returned value always comes from the triple product
//! `(q, -x, -q/x; q)_inf`. The bilateral sum is evaluated alongside as a
//! cross-check whenever its terms stay inside the floating-point range.

use num_complex::Complex;

use super::base::{Base, EvalConfig};
use super::pochhammer::qpochhammer_infinite;
use crate::error::{QError, Result};
use crate::scalar::{one, zero, Real, Scaled};

/// Relative disagreement between product and sum that is tolerated before
/// reporting [`QError::Consistency`] (f64; scaled up for coarser types).
pub const THETA_CONSISTENCY_TOL: f64 = 1e-8;

fn consistency_tol<T: Real>() -> T {
    T::lit(THETA_CONSISTENCY_TOL).max(T::epsilon() * T::lit(4096.0))
}

/// Triple-product value in scaled form; no cross-check.
pub fn theta_product<T: Real>(
    base: Base<T>,
    x: Complex<T>,
    cfg: &EvalConfig<T>,
) -> Result<Scaled<T>> {
    if x.norm() == T::zero() {
        return Err(QError::Domain("theta_q(x) needs x != 0".into()));
    }
    let q = base.q();
    let a = qpochhammer_infinite(q, base, cfg)?;
    let b = qpochhammer_infinite(-x, base, cfg)?;
    let c = qpochhammer_infinite(-q / x, base, cfg)?;
    if b.is_zero() || c.is_zero() {
        return Ok(Scaled::from_complex(zero()));
    }
    Ok(a.scaled.mul(b.scaled).mul(c.scaled))
}

/// Truncated bilateral sum. Returns `(sum, sum of |terms|)`, or `None` when
/// a term leaves the representable range.
pub fn theta_bilateral<T: Real>(
    base: Base<T>,
    x: Complex<T>,
    cfg: &EvalConfig<T>,
) -> Result<Option<(Complex<T>, T)>> {
    if x.norm() == T::zero() {
        return Err(QError::Domain("theta_q(x) needs x != 0".into()));
    }
    let q = base.q();
    let ceiling = T::sum_ceiling();
    let mut sum = one::<T>();
    let mut abs_sum = T::one();

    // term_{n+1} = term_n * q^n * x for n >= 0,
    // term_{-m-1} = term_{-m} * q^{m+1} / x for m >= 0.
    for (step, ratio0) in [(x, one::<T>()), (x.inv(), q)] {
        let mut term = one::<T>();
        let mut peak = T::one();
        let mut qn = ratio0;
        let mut small = 0;
        let mut done = false;
        for _ in 0..cfg.max_terms {
            term = term * qn * step;
            qn = qn * q;
            let m = term.norm();
            if !m.is_finite() || m > ceiling {
                return Ok(None);
            }
            sum = sum + term;
            abs_sum = abs_sum + m;
            peak = peak.max(m);
            if m < cfg.tol * peak {
                small += 1;
                if small >= cfg.tail_window {
                    done = true;
                    break;
                }
            } else {
                small = 0;
            }
        }
        if !done {
            return Err(QError::NonConvergence {
                context: "bilateral theta sum".into(),
                terms: cfg.max_terms,
            });
        }
    }
    Ok(Some((sum, abs_sum)))
}

/// Triple-product value, cross-checked against the bilateral sum.
pub fn theta_scaled<T: Real>(
    base: Base<T>,
    x: Complex<T>,
    cfg: &EvalConfig<T>,
) -> Result<Scaled<T>> {
    let prod = theta_product(base, x, cfg)?;
    if let Some((sum, abs_sum)) = theta_bilateral(base, x, cfg)? {
        let p = prod.value();
        if p.norm().is_finite() {
            let diff = (p - sum).norm();
            let scale = p.norm().max(sum.norm());
            let slack = T::epsilon() * T::lit(64.0) * abs_sum;
            if diff > consistency_tol::<T>() * scale + slack {
                return Err(QError::Consistency {
                    x: format!("{x}"),
                    rel_err: (diff / scale).as_f64(),
                });
            }
        }
    }
    Ok(prod)
}

/// `theta_q(x)`. Fails on `x = 0` or when product and sum disagree.
pub fn theta<T: Real>(base: Base<T>, x: Complex<T>, cfg: &EvalConfig<T>) -> Result<Complex<T>> {
    Ok(theta_scaled(base, x, cfg)?.value())
}

/// `1 / theta_q(x)` without intermediate overflow; zero when theta is huge.
pub fn theta_recip<T: Real>(
    base: Base<T>,
    x: Complex<T>,
    cfg: &EvalConfig<T>,
) -> Result<Complex<T>> {
    let t = theta_scaled(base, x, cfg)?;
    if t.is_zero() {
        return Err(QError::ZeroProximity(format!("theta_q({x})")));
    }
    Ok(t.recip().value())
}

/// Sign character `theta_q(-lambda x) / theta_q(lambda x)`, a solution of
/// `u(qx) = -u(x)`.
pub fn sign_character<T: Real>(
    base: Base<T>,
    lambda: Complex<T>,
    x: Complex<T>,
    cfg: &EvalConfig<T>,
) -> Result<Complex<T>> {
    let num = theta_scaled(base, -lambda * x, cfg)?;
    let den = theta_scaled(base, lambda * x, cfg)?;
    if den.is_zero() {
        return Err(QError::ZeroProximity(format!("theta_q({})", lambda * x)));
    }
    Ok(num.mul(den.recip()).value())
}
