use num_complex::Complex;

use crate::error::{QError, Result};
use crate::qcore::{spiral_distance, theta_scaled, Base, EvalConfig};
use crate::scalar::{one, zero, Real, Scaled};

/// Relative distance from `[1; q^s]` below which `lambda` is rejected.
pub const LAMBDA_SPIRAL_TOL: f64 = 1e-10;
/// Relative distance from `[-lambda; q^s]` below which `x` is rejected.
pub const X_SPIRAL_TOL: f64 = 1e-10;
/// Tail bound for a fixed window.
pub const FIXED_TAIL_TOL: f64 = 1e-12;
/// Tail bound for the adaptive window.
pub const ADAPTIVE_TAIL_TOL: f64 = 1e-13;
pub const START_WINDOW: usize = 24;
pub const WINDOW_STEP: usize = 8;
pub const MAX_WINDOW: usize = 400;

/// The q-spiral `[lambda; q^s]` carrying a first kind q-Laplace transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spiral<T: Real> {
    lambda: Complex<T>,
    level: u32,
    base: Base<T>,
}

impl<T: Real> Spiral<T> {
    pub fn new(lambda: Complex<T>, level: u32, base: Base<T>) -> Result<Self> {
        if level == 0 {
            return Err(QError::InvalidConfig("spiral level must be >= 1".into()));
        }
        if !(lambda.norm() > T::zero()) || !lambda.norm().is_finite() {
            return Err(QError::Domain(format!("lambda = {lambda} must be nonzero")));
        }
        let qs = base.power(level).q();
        let (_, d) = spiral_distance(lambda, one(), qs);
        if d < T::lit(LAMBDA_SPIRAL_TOL) {
            return Err(QError::SpiralPole {
                x: format!("lambda = {lambda}"),
                spiral: format!("[1; q^{level}]"),
            });
        }
        Ok(Self { lambda, level, base })
    }

    pub fn lambda(&self) -> Complex<T> {
        self.lambda
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn base(&self) -> Base<T> {
        self.base
    }

    /// The spiral base `q^s`.
    pub fn step(&self) -> Base<T> {
        self.base.power(self.level)
    }

    /// Spiral point `lambda (q^s)^n`.
    pub fn point(&self, n: i64) -> Complex<T> {
        self.lambda * self.step().pow(n)
    }

    /// Rejects `x` on (or within tolerance of) `[-lambda; q^s]`.
    pub fn check_point(&self, x: Complex<T>) -> Result<()> {
        if x.norm() == T::zero() {
            return Err(QError::Domain("q-Laplace transform needs x != 0".into()));
        }
        let (_, d) = spiral_distance(x, -self.lambda, self.step().q());
        if d < T::lit(X_SPIRAL_TOL) {
            return Err(QError::SpiralPole {
                x: format!("{x}"),
                spiral: format!("[-lambda; q^{}] with lambda = {}", self.level, self.lambda),
            });
        }
        Ok(())
    }
}

/// Value of a spiral sum with the window actually used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpiralSum<T: Real> {
    pub value: Complex<T>,
    pub window: usize,
    /// Contribution of the two outermost indices at each end, relative to
    /// the sum.
    pub tail: T,
}

struct Terms<'a, T: Real, F> {
    phi: F,
    spiral: &'a Spiral<T>,
    x: Complex<T>,
    cfg: EvalConfig<T>,
}

impl<T: Real, F: FnMut(Complex<T>) -> Result<Complex<T>>> Terms<'_, T, F> {
    fn term(&mut self, n: i64) -> Result<Complex<T>> {
        let xi = self.spiral.point(n);
        let f = (self.phi)(xi)?;
        if f.norm() == T::zero() {
            return Ok(zero());
        }
        let th = theta_scaled(self.spiral.step(), xi / self.x, &self.cfg)?;
        if th.is_zero() {
            return Err(QError::ZeroProximity(format!("theta at spiral point {xi}")));
        }
        Ok(Scaled::from_complex(f).mul(th.recip()).value())
    }
}

fn tail_ratio<T: Real>(terms: &[Complex<T>], sum: Complex<T>) -> T {
    let k = terms.len();
    let edge = terms[0].norm() + terms[1].norm() + terms[k - 1].norm() + terms[k - 2].norm();
    let s = sum.norm();
    if s > T::zero() {
        edge / s
    } else if edge == T::zero() {
        T::zero()
    } else {
        T::infinity()
    }
}

/// First kind q-Laplace transform over a fixed window:
/// `sum_{n=-W}^{W} phi(lambda Q^n) / theta_Q(lambda Q^n / x)`, `Q = q^s`.
///
/// Fails with [`QError::Tail`] when the outer terms still exceed
/// [`FIXED_TAIL_TOL`] relative to the sum.
pub fn qlaplace_spiral<T: Real>(
    phi: impl FnMut(Complex<T>) -> Result<Complex<T>>,
    spiral: &Spiral<T>,
    x: Complex<T>,
    window: usize,
) -> Result<Complex<T>> {
    spiral.check_point(x)?;
    let w = window.max(2) as i64;
    let mut t = Terms { phi, spiral, x, cfg: EvalConfig::default() };
    let terms = (-w..=w).map(|n| t.term(n)).collect::<Result<Vec<_>>>()?;
    let sum = terms.iter().fold(zero(), |a, &b| a + b);
    let tail = tail_ratio(&terms, sum);
    if !(tail < T::lit(FIXED_TAIL_TOL)) {
        return Err(QError::Tail { window: w as usize, ratio: tail.as_f64() });
    }
    Ok(sum)
}

/// Adaptive version of [`qlaplace_spiral`]: starts at [`START_WINDOW`] and
/// grows by [`WINDOW_STEP`] until the tails fall below [`ADAPTIVE_TAIL_TOL`].
pub fn qlaplace_spiral_adaptive<T: Real>(
    phi: impl FnMut(Complex<T>) -> Result<Complex<T>>,
    spiral: &Spiral<T>,
    x: Complex<T>,
) -> Result<SpiralSum<T>> {
    spiral.check_point(x)?;
    let mut t = Terms { phi, spiral, x, cfg: EvalConfig::default() };
    let mut w = START_WINDOW as i64;
    // terms stored from -w to w
    let mut terms = (-w..=w).map(|n| t.term(n)).collect::<Result<Vec<_>>>()?;
    // f32 cannot reach 1e-13
    let tol = T::lit(ADAPTIVE_TAIL_TOL).max(T::epsilon() * T::lit(16.0));
    loop {
        let sum = terms.iter().fold(zero(), |a, &b| a + b);
        let tail = tail_ratio(&terms, sum);
        if tail < tol {
            return Ok(SpiralSum { value: sum, window: w as usize, tail });
        }
        if w as usize >= MAX_WINDOW {
            return Err(QError::Tail { window: w as usize, ratio: tail.as_f64() });
        }
        let step = WINDOW_STEP as i64;
        let mut low = ((-w - step)..-w).map(|n| t.term(n)).collect::<Result<Vec<_>>>()?;
        let high = (w + 1..=w + step).map(|n| t.term(n)).collect::<Result<Vec<_>>>()?;
        low.extend(terms);
        low.extend(high);
        terms = low;
        w += step;
    }
}
