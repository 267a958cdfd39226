use num_complex::Complex;

use crate::error::{QError, Result};
use crate::qcore::{
    phi, qpochhammer_finite, qpochhammer_infinite, theta, theta_scaled, Base, EvalConfig, HyperSpec,
};
use crate::scalar::{one, zero, Real, Scaled};

pub const MIN_POINTS: usize = 64;
pub const START_POINTS: usize = 256;
pub const MAX_POINTS: usize = 1 << 16;
/// Relative change between successive doublings accepted as converged.
pub const QUADRATURE_TOL: f64 = 1e-10;

/// Circle `|xi| = radius` discretized by `points` equispaced nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Contour<T: Real> {
    radius: T,
    points: usize,
}

impl<T: Real> Contour<T> {
    pub fn new(radius: T, points: usize) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(QError::InvalidConfig(format!("contour radius {radius} must be > 0")));
        }
        if points < MIN_POINTS {
            return Err(QError::InvalidConfig(format!(
                "contour needs at least {MIN_POINTS} points, got {points}"
            )));
        }
        Ok(Self { radius, points })
    }

    /// Radius `min(1, |q|^{-2}/2)` for kernels with poles at `|tau| = |q|^{-2}`.
    pub fn for_qairy_kernel(base: Base<T>) -> Self {
        let r = T::one().min(T::lit(0.5) / (base.modulus() * base.modulus()));
        Self { radius: r, points: START_POINTS }
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn points(&self) -> usize {
        self.points
    }
}

/// Quadrature value with the resolution at which it settled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourValue<T: Real> {
    pub value: Complex<T>,
    pub points: usize,
    pub change: T,
}

/// Trapezoid rule `(1/M) sum_j g(xi_j) theta_q(x/xi_j)` at exactly `M` nodes.
pub fn qlaplace_contour_fixed<T: Real>(
    g: &mut impl FnMut(Complex<T>) -> Result<Complex<T>>,
    base: Base<T>,
    x: Complex<T>,
    radius: T,
    m: usize,
) -> Result<Complex<T>> {
    let cfg = EvalConfig::default();
    let mut acc = zero::<T>();
    let tau = T::TAU() / T::from_usize(m).expect("point count fits");
    for j in 0..m {
        let xi = Complex::from_polar(radius, tau * T::from_usize(j).expect("index fits"));
        let th = theta_scaled(base, x / xi, &cfg)?;
        acc = acc + Scaled::from_complex(g(xi)?).mul(th).value();
    }
    Ok(acc / T::from_usize(m).expect("point count fits"))
}

/// Second kind q-Laplace transform
/// `(1/2 pi i) oint g(xi) theta_q(x/xi) dxi/xi` by the trapezoid rule,
/// doubling the node count from `max(256, contour.points)` until two
/// successive values agree to [`QUADRATURE_TOL`].
pub fn qlaplace_contour<T: Real>(
    mut g: impl FnMut(Complex<T>) -> Result<Complex<T>>,
    base: Base<T>,
    x: Complex<T>,
    contour: &Contour<T>,
) -> Result<ContourValue<T>> {
    if x.norm() == T::zero() {
        return Err(QError::Domain("contour transform needs x != 0".into()));
    }
    let tol = T::lit(QUADRATURE_TOL).max(T::epsilon() * T::lit(64.0));
    let mut m = contour.points.max(START_POINTS);
    let mut prev = qlaplace_contour_fixed(&mut g, base, x, contour.radius, m)?;
    let mut change = T::infinity();
    while m < MAX_POINTS {
        m *= 2;
        let next = qlaplace_contour_fixed(&mut g, base, x, contour.radius, m)?;
        let d = (next - prev).norm();
        change = d / next.norm().max(prev.norm()).max(T::min_positive_value());
        prev = next;
        if change < tol || d == T::zero() {
            return Ok(ContourValue { value: next, points: m, change });
        }
    }
    Err(QError::Quadrature { points: m, change: change.as_f64() })
}

/// Borel kernel `1/((-q^2 tau;q)_inf (q^2 tau;q)_inf)` of `A_{q^2}(-q^3 t^2)`.
pub fn qairy_kernel<T: Real>(base: Base<T>, tau: Complex<T>, cfg: &EvalConfig<T>) -> Result<Complex<T>> {
    let q2 = base.pow(2);
    let a = qpochhammer_infinite(-q2 * tau, base, cfg)?;
    let b = qpochhammer_infinite(q2 * tau, base, cfg)?;
    if a.is_zero() || b.is_zero() {
        return Err(QError::Pole(format!("kernel pole at tau = {tau}")));
    }
    Ok(a.scaled.mul(b.scaled).recip().value())
}

/// Residue evaluation of the second kind transform of [`qairy_kernel`]:
/// minus the sum of residues at `tau = +-q^{-2-k}`, `k = 0..=kmax`, stopping
/// early once three successive terms are below `1e-14` of the sum.
pub fn residue_laplace_qairy<T: Real>(base: Base<T>, t: Complex<T>, kmax: usize) -> Result<Complex<T>> {
    if t.norm() == T::zero() {
        return Err(QError::Domain("residue sum needs t != 0".into()));
    }
    let cfg = EvalConfig::default();
    let q = base.q();
    let qq = qpochhammer_infinite(q, base, &cfg)?.value();
    let m1 = qpochhammer_infinite(-one::<T>(), base, &cfg)?.value();
    let mut sum = zero::<T>();
    let mut small = 0;
    let tol = T::lit(1e-14).max(T::epsilon());
    for k in 0..=kmax {
        let k = k as i64;
        let tri = base.pow(k * (k + 1) / 2);
        let sign = if k % 2 == 0 { -T::one() } else { T::one() };
        let res_base = tri * sign / (qpochhammer_finite(q, base, k as usize) * qq);
        let inv = tri / (m1 * qpochhammer_finite(-q, base, k as usize));
        let arg = t * base.pow(2 + k);
        let th = theta(base, arg, &cfg)? + theta(base, -arg, &cfg)?;
        let term = res_base * inv * th;
        sum = sum - term;
        if term.norm() < tol * sum.norm() {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok(sum)
}

/// Closed form of the residue sum:
/// `[theta_q(q^2 t) 1phi1(0;-q;q,1/t) + theta_q(-q^2 t) 1phi1(0;-q;q,-1/t)] / (q,-1;q)_inf`.
pub fn qairy_closed_form<T: Real>(base: Base<T>, t: Complex<T>) -> Result<Complex<T>> {
    if t.norm() == T::zero() {
        return Err(QError::Domain("closed form needs t != 0".into()));
    }
    let cfg = EvalConfig::default();
    let q = base.q();
    let spec = HyperSpec::new(vec![zero()], vec![-q], base)?;
    let q2t = q * q * t;
    let num = theta(base, q2t, &cfg)? * phi(&spec, t.inv(), &cfg)?
        + theta(base, -q2t, &cfg)? * phi(&spec, -t.inv(), &cfg)?;
    let den = qpochhammer_infinite(q, base, &cfg)?.value()
        * qpochhammer_infinite(-one::<T>(), base, &cfg)?.value();
    Ok(num / den)
}
