//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All q-series code is written once against [`Real`] and runs on
//! `Complex<f32>` or `Complex<f64>`. Thresholds are given as `f64`
//! literals and converted with [`Real::lit`].

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into this scalar type.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    /// Lossy conversion used for reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Largest magnitude a bilateral theta sum may reach before the
    /// cross-check is skipped (keeps a margin below overflow).
    fn sum_ceiling() -> Self {
        Self::max_value().sqrt()
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub(crate) fn one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

pub(crate) fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}


/// `q^n` for any integer `n` (negative powers invert `q`).
pub fn cpow<T: Real>(q: Complex<T>, n: i64) -> Complex<T> {
    match i32::try_from(n) {
        Ok(k) => q.powi(k),
        // Exponents this large only occur in super-geometric weights that
        // are already far below the representable range.
        Err(_) => {
            if (n > 0) == (q.norm() < T::one()) {
                zero()
            } else {
                Complex::new(T::infinity(), T::zero())
            }
        }
    }
}

/// `q^{n(n-1)/2}`, the quadratic weight that appears in theta functions and
/// q-Borel transforms.
pub fn qtri<T: Real>(q: Complex<T>, n: i64) -> Complex<T> {
    cpow(q, n * (n - 1) / 2)
}

/// Relative distance `|a - b| / |b|`, falling back to `|a - b|` when `b = 0`.
pub fn rel_dist<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let d = (a - b).norm();
    let s = b.norm();
    if s > T::zero() {
        d / s
    } else {
        d
    }
}

/// Relative error `|a - b| / max(|a|, |b|)` with the convention 0 for `a = b = 0`.
pub fn rel_err<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let d = (a - b).norm();
    let s = a.norm().max(b.norm());
    if s > T::zero() {
        d / s
    } else {
        T::zero()
    }
}

/// Complex value stored as `mantissa * 2^exp2`, so products of many
/// q-factors neither overflow nor underflow before the final division.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled<T: Real> {
    pub mantissa: Complex<T>,
    pub exp2: i64,
}

impl<T: Real> Scaled<T> {
    pub fn one() -> Self {
        Self {
            mantissa: one(),
            exp2: 0,
        }
    }

    pub fn from_complex(z: Complex<T>) -> Self {
        let mut s = Self {
            mantissa: z,
            exp2: 0,
        };
        s.normalize();
        s
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == T::zero() && self.mantissa.im == T::zero()
    }

    fn normalize(&mut self) {
        let m = self.mantissa.norm();
        if m == T::zero() || !m.is_finite() {
            return;
        }
        let e = m.log2().floor();
        if e.abs() > T::lit(16.0) {
            let k = e.to_i64().unwrap_or(0);
            // two half-steps so subnormal mantissas do not overflow the factor
            let h = -(k as i32) / 2;
            let two = T::lit(2.0);
            self.mantissa = self.mantissa * two.powi(h) * two.powi(-(k as i32) - h);
            self.exp2 += k;
        }
    }

    pub fn mul(self, other: Self) -> Self {
        let mut s = Self {
            mantissa: self.mantissa * other.mantissa,
            exp2: self.exp2 + other.exp2,
        };
        s.normalize();
        s
    }

    pub fn mul_complex(self, z: Complex<T>) -> Self {
        self.mul(Self::from_complex(z))
    }

    pub fn recip(self) -> Self {
        let mut s = Self {
            mantissa: self.mantissa.inv(),
            exp2: -self.exp2,
        };
        s.normalize();
        s
    }

    /// Natural logarithm of the modulus.
    pub fn ln_norm(&self) -> T {
        self.mantissa.norm().ln() + T::lit(self.exp2 as f64) * T::LN_2()
    }

    /// Collapses to an ordinary complex number; may overflow to infinity or
    /// underflow to zero.
    pub fn value(&self) -> Complex<T> {
        if self.is_zero() {
            return zero();
        }
        let e = self.exp2.clamp(-4000, 4000) as i32;
        // Two half-steps avoid overflowing the scale factor itself.
        let h = e / 2;
        let two = T::lit(2.0);
        self.mantissa * two.powi(h) * two.powi(e - h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_survives_overflow_and_recovers() {
        let big = Complex::new(1e200_f64, 1e200);
        let s = Scaled::from_complex(big).mul_complex(big).mul(Scaled::from_complex(big).recip());
        assert!(rel_err(s.value(), big) < 1e-14);
        let tiny = Scaled::from_complex(big).mul_complex(big).mul_complex(big).recip();
        assert_eq!(tiny.value(), Complex::new(0.0, 0.0));
        assert!(tiny.ln_norm() < -1300.0);
        let sub = Scaled::from_complex(Complex::new(4.5e-312_f64, -0.0));
        assert!(sub.mantissa.re.is_finite() && rel_err(sub.value(), Complex::new(4.5e-312, 0.0)) < 1e-3);
    }

    #[test]
    fn cpow_negative_powers() {
        let q = Complex::new(0.5_f64, 0.0);
        assert_eq!(cpow(q, -3), Complex::new(8.0, 0.0));
        assert_eq!(qtri(q, 3), Complex::new(0.125, 0.0));
        assert_eq!(qtri(q, -1), Complex::new(0.5, 0.0));
    }
}
