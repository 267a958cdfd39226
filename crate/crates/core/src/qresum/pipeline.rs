use num_complex::Complex;

use super::spiral::{qlaplace_spiral_adaptive, Spiral, SpiralSum};
use crate::error::{QError, Result};
use crate::qcore::{eq_small, spiral_distance, Base, EvalConfig};
use crate::scalar::{one, Real};

/// Relative distance of the spiral from the poles of the Borel image
/// below which `lambda` is rejected.
pub const BOREL_POLE_TOL: f64 = 1e-8;

fn check_borel_poles<T: Real>(base: Base<T>, point: Complex<T>, what: &str) -> Result<()> {
    let (_, d) = spiral_distance(point, one(), base.q());
    if d < T::lit(BOREL_POLE_TOL) {
        return Err(QError::SpiralPole {
            x: format!("{what} = {point}"),
            spiral: "q^Z (poles of the q-Borel image)".into(),
        });
    }
    Ok(())
}

/// Resummation of `2phi0(0,0;-;q,-x/q)` along `[lambda; q]`, with the
/// window used.
pub fn resum_2f0_detailed<T: Real>(base: Base<T>, lambda: Complex<T>, x: Complex<T>) -> Result<SpiralSum<T>> {
    if x.norm() == T::zero() {
        return Err(QError::Domain("resummation needs x != 0".into()));
    }
    check_borel_poles(base, lambda, "lambda")?;
    let spiral = Spiral::new(lambda, 1, base)?;
    let cfg = EvalConfig::default();
    let qi = base.q().inv();
    qlaplace_spiral_adaptive(|xi| eq_small(base, xi * qi, &cfg), &spiral, x)
}

/// `L^+_{q,lambda} B^+_q 2phi0(0,0;-;q,-x/q)`: the spiral sum of
/// `e_q(xi/q) / theta_q(xi/x)` over `xi in [lambda; q]`.
pub fn resum_2f0<T: Real>(base: Base<T>, lambda: Complex<T>, x: Complex<T>) -> Result<Complex<T>> {
    Ok(resum_2f0_detailed(base, lambda, x)?.value)
}

/// Sign `(-1)^{r-1}` in the level `r-1` Borel image `e_q((-1)^{r-1} xi)`.
pub fn rf0_sign<T: Real>(r: u32) -> Complex<T> {
    if r.is_multiple_of(2) {
        -one::<T>()
    } else {
        one()
    }
}

/// Resummation of `r phi0(0,...,0;-;q,x)` at level `r-1`, with the window used.
pub fn resum_rf0_detailed<T: Real>(
    r: u32,
    base: Base<T>,
    lambda: Complex<T>,
    x: Complex<T>,
) -> Result<SpiralSum<T>> {
    if r < 2 {
        return Err(QError::InvalidConfig(format!("r = {r} must be >= 2")));
    }
    if x.norm() == T::zero() {
        return Err(QError::Domain("resummation needs x != 0".into()));
    }
    let eps = rf0_sign::<T>(r);
    check_borel_poles(base, eps * lambda, "(-1)^(r-1) lambda")?;
    let spiral = Spiral::new(lambda, r - 1, base)?;
    let cfg = EvalConfig::default();
    qlaplace_spiral_adaptive(|xi| eq_small(base, eps * xi, &cfg), &spiral, x)
}

/// `L^+_{q^{r-1},lambda} B^+_{q^{r-1}} r phi0(0,...,0;-;q,x)`: spiral sum of
/// `e_q((-1)^{r-1} xi) / theta_{q^{r-1}}(xi/x)` over `[lambda; q^{r-1}]`.
pub fn resum_rf0<T: Real>(r: u32, base: Base<T>, lambda: Complex<T>, x: Complex<T>) -> Result<Complex<T>> {
    Ok(resum_rf0_detailed(r, base, lambda, x)?.value)
}
