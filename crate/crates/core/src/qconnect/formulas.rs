//! Right-hand sides of the connection formulas, each built only from qcore
//! primitives (theta products, convergent series, shifted factorials).

use num_complex::Complex;

use crate::error::{QError, Result, ResultExt};
use crate::qcore::{
    phi, qpochhammer_finite, qpochhammer_infinite, spiral_distance, theta, Base, EvalConfig, HyperSpec,
};

pub type C = Complex<f64>;

/// Relative distance to a theta zero below which a denominator is refused.
pub const ZERO_TOL: f64 = 1e-10;

pub(crate) fn cfg() -> EvalConfig<f64> {
    EvalConfig::default()
}

pub(crate) fn c(v: f64) -> C {
    Complex::new(v, 0.0)
}

/// `theta_b(y)`.
pub(crate) fn th(b: Base<f64>, y: C) -> Result<C> {
    theta(b, y, &cfg())
}

/// `theta_b(y)` used as a denominator: refuses `y` near `-b^Z`.
pub(crate) fn th_den(b: Base<f64>, y: C, name: &str) -> Result<C> {
    if y.norm() == 0.0 {
        return Err(QError::Domain(format!("{name} at 0")));
    }
    let (_, d) = spiral_distance(y, c(-1.0), b.q());
    if d < ZERO_TOL {
        return Err(QError::ZeroProximity(format!("{name} (argument {y})")));
    }
    th(b, y).ctx(name)
}

pub(crate) fn poch(a: C, b: Base<f64>) -> Result<C> {
    Ok(qpochhammer_infinite(a, b, &cfg())?.value())
}

/// `1phi1(0; lower; b, y)`.
pub(crate) fn phi11(b: Base<f64>, lower: C, y: C) -> Result<C> {
    let s = HyperSpec::new(vec![c(0.0)], vec![lower], b)?;
    phi(&s, y, &cfg())
}

/// `0phi_{k}(-; lower; b, y)` or `_k phi_k(0,...,0; lower; b, y)` when
/// `zero_upper` is set.
pub(crate) fn phi_zero(b: Base<f64>, lower: Vec<C>, y: C, zero_upper: bool) -> Result<C> {
    let upper = if zero_upper { vec![c(0.0); lower.len()] } else { vec![] };
    let s = HyperSpec::new(upper, lower, b)?;
    phi(&s, y, &cfg())
}

fn q2(b: Base<f64>) -> Base<f64> {
    b.squared()
}

/// `(q, q^2; q^2)_inf`.
fn qq2(b: Base<f64>) -> Result<C> {
    Ok(poch(b.q(), q2(b))? * poch(b.pow(2), q2(b))?)
}

/// `v_1(x) = theta_q(x)/theta_{q^2}(x) 1phi1(0;q;q^2,q^2/x)` as printed.
pub fn v1(b: Base<f64>, x: C) -> Result<C> {
    let q = b.q();
    Ok(th(b, x)? / th_den(q2(b), x, "theta_{q^2}(x)")? * phi11(q2(b), q, q * q / x)?)
}

/// `v_2(x) = q/(q-1) theta_q(x/q)/theta_{q^2}(x/q) (1/x) 1phi1(0;q^3;q^2,q^3/x)`
/// as printed.
pub fn v2(b: Base<f64>, x: C) -> Result<C> {
    let q = b.q();
    let pre = q / (q - 1.0) * th(b, x / q)? / th_den(q2(b), x / q, "theta_{q^2}(x/q)")? / x;
    Ok(pre * phi11(q2(b), q.powi(3), q.powi(3) / x)?)
}

/// The two terms of the Ismail-Zhang expansion, `A_q = T1 + T2`.
pub fn ismail_zhang_terms(b: Base<f64>, x: C) -> Result<[C; 2]> {
    let q = b.q();
    let p = q2(b);
    let qq = poch(q, p)?;
    let t1 = poch(q * x, p)? * poch(q / x, p)? / qq * phi11(p, q, q * q / x)?;
    let t2 = -q * poch(q * q * x, p)? * poch(x.inv(), p)? / ((1.0 - q) * qq) * phi11(p, q.powi(3), q.powi(3) / x)?;
    Ok([t1, t2])
}

/// `C11` and `C12` exactly as printed.
pub fn c1_printed(b: Base<f64>, x: C) -> Result<[C; 2]> {
    let q = b.q();
    let p = q2(b);
    let n = qq2(b)?;
    let c11 = th(p, q * x)? * th(p, x)? / (n * th_den(b, x, "theta_q(x)")?);
    let c12 = th(p, x)? * th(p, x / q)? / (n * th_den(b, x / q, "theta_q(x/q)")?);
    Ok([c11, c12])
}

/// Coefficients that reproduce the Ismail-Zhang expansion against the
/// printed `v1`, `v2`.
pub fn c1_ismail_zhang(b: Base<f64>, x: C) -> Result<[C; 2]> {
    let q = b.q();
    let p = q2(b);
    let n = qq2(b)?;
    let c11 = th(p, -q * x)? * th(p, x)? / (n * th_den(b, x, "theta_q(x)")?);
    let c12 = -th(p, -x)? * th(p, x / q)? / (n * th_den(b, x / q, "theta_q(x/q)")?);
    Ok([c11, c12])
}

/// `C~21`, `C~22` exactly as printed with the main theorem.
pub fn c2_printed(b: Base<f64>, lambda: C, x: C) -> Result<[C; 2]> {
    let q = b.q();
    let p = q2(b);
    let qq = poch(q, b)?;
    let l2 = lambda * lambda;
    let d = th_den(b, x / lambda, "theta_q(x/lambda)")?;
    let c21 = qq * th(p, -q * x / l2)? * th(p, x)?
        / (th_den(b, -q / lambda, "theta_q(-q/lambda)")? * d * th_den(b, x, "theta_q(x)")?);
    let c22 = qq * th(p, -x / l2)? * th(p, x / q)?
        / (th_den(b, -lambda.inv(), "theta_q(-1/lambda)")? * d * th_den(b, x / q, "theta_q(x/q)")?);
    Ok([c21, c22])
}

/// `C~21`, `C~22` read off the resummed connection formula.
pub fn c2_resolved(b: Base<f64>, lambda: C, x: C) -> Result<[C; 2]> {
    let q = b.q();
    let p = q2(b);
    let qq = poch(q, b)?;
    let l2 = lambda * lambda;
    let den = th_den(b, -lambda / q, "theta_q(-lambda/q)")? * th_den(b, lambda / x, "theta_q(lambda/x)")?;
    let c21 = qq * th(p, -l2 / (q * x))? * th(p, x)? / den;
    let c22 = -qq * lambda * th(p, -l2 / x)? * th(p, x / q)? / (x * den);
    Ok([c21, c22])
}

/// The two terms on the right of the resummed `2phi0` connection formula.
pub fn two_f_zero_terms(b: Base<f64>, lambda: C, x: C) -> Result<[C; 2]> {
    let q = b.q();
    let p = q2(b);
    let qq = poch(q, b)?;
    let l2 = lambda * lambda;
    let tx = th(b, x)?;
    let den = th_den(b, -lambda / q, "theta_q(-lambda/q)")? * th_den(b, lambda / x, "theta_q(lambda/x)")?;
    let t1 = qq * tx * th(p, -l2 / (q * x))? / den * phi11(p, q, q * q / x)?;
    let t2 = qq / (1.0 - q) * tx * th(p, -l2 / x)? / den * (lambda / x) * phi11(p, q.powi(3), q.powi(3) / x)?;
    Ok([t1, t2])
}

/// `(q;q)_inf / theta_q(-x)`.
fn eq_prefactor(b: Base<f64>, x: C) -> Result<C> {
    Ok(poch(b.q(), b)? / th_den(b, -x, "theta_q(-x)")?)
}

/// Right side of the `e_q`/`E_q` connection formula, with `E_q(-q/x)` summed
/// as a series.
pub fn eq_via_big(b: Base<f64>, x: C) -> Result<C> {
    Ok(eq_prefactor(b, x)? * crate::qcore::Eq_series(b, -b.q() / x, &cfg())?)
}

/// Alternate representation of `e_q(x/q)` by two `0phi1` series.
pub fn eq_alternate_rhs(b: Base<f64>, x: C) -> Result<C> {
    let q = b.q();
    let p = q2(b);
    let pre = eq_prefactor(b, x / q)?;
    let x2 = x * x;
    let a = phi_zero(p, vec![q], q.powi(5) / x2, false)?;
    let z = phi_zero(p, vec![q.powi(3)], q.powi(7) / x2, false)?;
    Ok(pre * (a - q * q / ((1.0 - q) * x) * z))
}

/// Lower parameters `{q^{j+1}, ..., q^{j+r}} \ {q^r}`.
pub(crate) fn split_lower(b: Base<f64>, r: u32, j: u32) -> Vec<C> {
    (j + 1..=j + r).filter(|&e| e != r).map(|e| b.pow(e as i64)).collect()
}

/// `e_q(x)` split into `r` series in `(q/x)^r`.
pub fn eq_rsplit_rhs(b: Base<f64>, r: u32, x: C) -> Result<C> {
    let q = b.q();
    let qr = b.power(r);
    let y = q / x;
    let mut s = c(0.0);
    for j in 0..r {
        let k = j as i64;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let coef = sign * b.pow(k * (k - 1) / 2) / qpochhammer_finite(q, b, j as usize) * y.powi(j as i32);
        // (q^r)^{(r+2j-1)/2} (q/x)^r
        let arg = b.pow((r as i64) * (r as i64 + 2 * k - 1) / 2) * y.powi(r as i32);
        s += coef * phi_zero(qr, split_lower(b, r, j), arg, false)?;
    }
    Ok(eq_prefactor(b, x)? * s)
}

/// Printed readings of the level `r-1` theorem used by the audit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelReading {
    /// Theta argument `(-1)^{r-1} q^{e_j} (lambda/x)^r`, series argument
    /// `q^{e_j}/x`, `e_j` interpolated linearly between the two printed ends.
    PrintedLiteral,
    /// As printed but with `lambda^r / x` in the theta argument.
    PrintedLambdaPow,
    /// Closed form worked out from the resummation pipeline.
    Rederived,
}

impl LevelReading {
    pub const ALL: [LevelReading; 3] = [
        LevelReading::PrintedLiteral,
        LevelReading::PrintedLambdaPow,
        LevelReading::Rederived,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LevelReading::PrintedLiteral => "printed_literal",
            LevelReading::PrintedLambdaPow => "printed_lambda_pow",
            LevelReading::Rederived => "rederived",
        }
    }
}

/// The `r` terms of a reading of the level `r-1` theorem.
pub fn level_r_terms(b: Base<f64>, r: u32, lambda: C, x: C, reading: LevelReading) -> Result<Vec<C>> {
    let q = b.q();
    let big = b.power(r - 1);
    let theta_base = b.power(r * (r - 1));
    let series_base = b.power(r);
    let ri = r as i64;
    let eps = if r.is_multiple_of(2) { -1.0 } else { 1.0 };
    let qq = poch(q, b)?;
    let lam_x = lambda / x;
    let mut out = Vec::with_capacity(r as usize);
    match reading {
        LevelReading::PrintedLiteral | LevelReading::PrintedLambdaPow => {
            let pre = qq
                / (th_den(big, lam_x, "theta_{q^{r-1}}(lambda/x)")? * th_den(b, -lambda, "theta_q(-lambda)")?);
            for j in 0..r {
                let k = j as i64;
                let e = (ri - 1) * (ri - 2) / 2 + k * (ri + 1);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let coef = sign * b.pow(k * (k - 1) / 2) / qpochhammer_finite(q, b, j as usize)
                    * (q / lambda).powi(j as i32);
                let targ = match reading {
                    LevelReading::PrintedLiteral => eps * b.pow(e) * lam_x.powi(r as i32),
                    _ => eps * b.pow(e) * lambda.powi(r as i32) / x,
                };
                let series = phi_zero(series_base, split_lower(b, r, j), b.pow(e) / x, true)?;
                out.push(pre * coef * th(theta_base, targ)? * series);
            }
        }
        LevelReading::Rederived => {
            let pre = qq
                / (th_den(b, -eps * lambda, "theta_q(-eta lambda)")?
                    * th_den(big, lam_x, "theta_{q^{r-1}}(lambda/x)")?);
            let neg = -eps;
            for j in 0..r {
                let k = j as i64;
                let coef = c(neg).powi(j as i32) * b.pow(k * (k + 1) / 2)
                    / (qpochhammer_finite(q, b, j as usize) * lambda.powi(j as i32));
                let targ = c(neg).powi(r as i32 - 1) * b.pow((ri - 1) * (ri - 2 - 2 * k) / 2) * lambda.powi(r as i32) / x;
                let series = phi_zero(series_base, split_lower(b, r, j), eps * b.pow(k + 1) / x, true)?;
                out.push(pre * coef * th(theta_base, targ)? * series);
            }
        }
    }
    Ok(out)
}

/// Right side of the Ramanujan / q-Airy connection formula at `x`.
pub fn ram_qairy_rhs(b: Base<f64>, x: C) -> Result<C> {
    let q = b.q();
    let cfg = cfg();
    let num = th(b, x / q)? * crate::qcore::qairy_aiq(b, -x, &cfg)? + th(b, -x / q)? * crate::qcore::qairy_aiq(b, x, &cfg)?;
    Ok(num / (poch(q, b)? * poch(c(-1.0), b)?))
}
