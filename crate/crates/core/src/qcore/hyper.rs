//! Basic hypergeometric series `_r phi_s`.

use num_complex::Complex;

use super::base::{spiral_distance, Base, EvalConfig};
use crate::error::{QError, Result};
use crate::scalar::{one, Real};

/// How the series behaves as a function of its argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvergenceClass {
    /// `r - s < 1`: entire in `x`.
    Entire,
    /// `r - s = 1`: radius of convergence 1.
    UnitDisc,
    /// `r - s > 1`: radius of convergence 0.
    Divergent,
}

/// Parameters `(a_1..a_r; b_1..b_s; q)` of a series `_r phi_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperSpec<T: Real> {
    upper: Vec<Complex<T>>,
    lower: Vec<Complex<T>>,
    base: Base<T>,
}

const LOWER_POLE_TOL: f64 = 1e-12;

impl<T: Real> HyperSpec<T> {
    pub fn new(upper: Vec<Complex<T>>, lower: Vec<Complex<T>>, base: Base<T>) -> Result<Self> {
        for &b in &lower {
            if hits_inverse_power(b, base) {
                return Err(QError::InvalidSpec(format!(
                    "lower parameter {b} equals q^-m, a denominator (b;q)_n vanishes"
                )));
            }
        }
        Ok(Self { upper, lower, base })
    }

    pub fn upper(&self) -> &[Complex<T>] {
        &self.upper
    }

    pub fn lower(&self) -> &[Complex<T>] {
        &self.lower
    }

    pub fn base(&self) -> Base<T> {
        self.base
    }

    pub fn class(&self) -> ConvergenceClass {
        let d = self.upper.len() as i64 - self.lower.len() as i64;
        match d {
            d if d < 1 => ConvergenceClass::Entire,
            1 => ConvergenceClass::UnitDisc,
            _ => ConvergenceClass::Divergent,
        }
    }

    fn label(&self) -> String {
        format!("{}phi{}", self.upper.len(), self.lower.len())
    }

    /// Coefficient `c_n` of `x^n`, by direct products (used as an oracle and
    /// for formal series).
    pub fn coefficient(&self, n: usize) -> Complex<T> {
        use super::pochhammer::qpochhammer_finite;
        let b = self.base;
        let mut c = one::<T>();
        for &a in &self.upper {
            c = c * qpochhammer_finite(a, b, n);
        }
        for &l in &self.lower {
            c = c / qpochhammer_finite(l, b, n);
        }
        c = c / qpochhammer_finite(b.q(), b, n);
        let e = 1 + self.lower.len() as i64 - self.upper.len() as i64;
        let sign = if n % 2 == 1 && e % 2 != 0 { -T::one() } else { T::one() };
        let tri = crate::scalar::qtri(b.q(), n as i64);
        c * tri.powi(e as i32) * sign
    }
}

/// True when `b` lies within [`LOWER_POLE_TOL`] of some `q^{-m}`, `m >= 0`.
pub(crate) fn hits_inverse_power<T: Real>(b: Complex<T>, base: Base<T>) -> bool {
    let (n, d) = spiral_distance(b, Complex::new(T::one(), T::zero()), base.q());
    n <= 0 && d < T::lit(LOWER_POLE_TOL)
}

/// Sums `1 + t_1 + t_2 + ...` where `t_{n+1} = t_n * ratio(n)`.
///
/// Stops once `tail_window` consecutive terms fall below `tol` relative to
/// the largest term seen so far.
pub(crate) fn sum_by_ratio<T: Real>(
    cfg: &EvalConfig<T>,
    context: &str,
    mut ratio: impl FnMut(usize) -> Complex<T>,
) -> Result<Complex<T>> {
    let mut term = one::<T>();
    let mut sum = term;
    let mut peak = T::one();
    let mut small = 0;
    for n in 0..cfg.max_terms {
        term = term * ratio(n);
        let m = term.norm();
        if !m.is_finite() {
            return Err(QError::NonConvergence {
                context: format!("{context} (term overflow)"),
                terms: n + 1,
            });
        }
        sum = sum + term;
        peak = peak.max(m);
        if m <= cfg.tol * peak {
            small += 1;
            if small >= cfg.tail_window {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(QError::NonConvergence {
        context: context.to_string(),
        terms: cfg.max_terms,
    })
}

/// `_r phi_s(a; b; q, x) = sum_n (a;q)_n / ((b;q)_n (q;q)_n)
///  * {(-1)^n q^{n(n-1)/2}}^{1+s-r} x^n`.
pub fn phi<T: Real>(spec: &HyperSpec<T>, x: Complex<T>, cfg: &EvalConfig<T>) -> Result<Complex<T>> {
    match spec.class() {
        ConvergenceClass::Divergent if x.norm() > T::zero() => {
            return Err(QError::DivergentSeries(spec.label()));
        }
        ConvergenceClass::UnitDisc if x.norm() >= T::one() => {
            return Err(QError::ConvergenceRadius(format!("{} at |x| = {}", spec.label(), x.norm())));
        }
        _ => {}
    }
    if x.norm() == T::zero() {
        return Ok(one());
    }
    let q = spec.base.q();
    let e = 1 + spec.lower.len() as i32 - spec.upper.len() as i32;
    let mut qn = one::<T>();
    sum_by_ratio(cfg, &spec.label(), |_| {
        let mut r = x;
        for &a in &spec.upper {
            r = r * (one::<T>() - a * qn);
        }
        for &b in &spec.lower {
            r = r / (one::<T>() - b * qn);
        }
        qn = qn * q;
        r = r / (one::<T>() - qn);
        if e != 0 {
            // {(-1)^n q^{n(n-1)/2}} grows by -q^n per step
            r = r * (-(qn / q)).powi(e);
        }
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rel_err;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn zero_phi_one_at_origin() {
        let b = Base::real(0.5).unwrap();
        let s = HyperSpec::new(vec![], vec![c(0.0)], b).unwrap();
        assert_eq!(phi(&s, c(0.0), &EvalConfig::default()).unwrap(), c(1.0));
    }

    #[test]
    fn rejects_divergent_and_outside_disc() {
        let b = Base::real(0.5).unwrap();
        let cfg = EvalConfig::default();
        let s = HyperSpec::new(vec![c(0.0), c(0.0)], vec![], b).unwrap();
        assert!(matches!(phi(&s, c(0.1), &cfg), Err(QError::DivergentSeries(_))));
        assert_eq!(phi(&s, c(0.0), &cfg).unwrap(), c(1.0));
        let s = HyperSpec::new(vec![c(0.0)], vec![], b).unwrap();
        assert!(matches!(phi(&s, c(1.5), &cfg), Err(QError::ConvergenceRadius(_))));
    }

    #[test]
    fn rejects_lower_inverse_powers() {
        let b = Base::real(0.5).unwrap();
        assert!(HyperSpec::new(vec![], vec![c(4.0)], b).is_err());
        assert!(HyperSpec::new(vec![], vec![c(1.0)], b).is_err());
        assert!(HyperSpec::new(vec![], vec![c(0.25)], b).is_ok());
        assert!(HyperSpec::new(vec![], vec![c(3.0)], b).is_ok());
    }

    #[test]
    fn ratio_sum_matches_coefficients() {
        let b = Base::new(Complex::new(0.4, 0.1)).unwrap();
        let s = HyperSpec::new(vec![c(0.3)], vec![c(-0.2), Complex::new(0.1, 0.5)], b).unwrap();
        let x = Complex::new(1.7, -0.4);
        let direct: Complex<f64> = (0..80).map(|n| s.coefficient(n) * x.powi(n as i32)).sum();
        let v = phi(&s, x, &EvalConfig::default()).unwrap();
        assert!(rel_err(v, direct) < 1e-13);
    }

    #[test]
    fn classes() {
        let b = Base::real(0.5).unwrap();
        let s = HyperSpec::<f64>::new(vec![], vec![], b).unwrap();
        assert_eq!(s.class(), ConvergenceClass::Entire);
        let s = HyperSpec::<f64>::new(vec![c(0.0); 3], vec![c(0.0)], b).unwrap();
        assert_eq!(s.class(), ConvergenceClass::Divergent);
    }
}
