use super::formulas::{c1_printed, th_den, C};
use super::solutions::{eval_solution, SolutionId};
use crate::error::{QError, Result};
use crate::qcore::Base;
use crate::qresum::resum_2f0;
use crate::report::VerificationReport;

pub const ELLIPTICITY_TOL: f64 = 1e-10;

/// Which row-one coefficient to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficient {
    C11,
    C12,
}

impl Coefficient {
    pub fn name(self) -> &'static str {
        match self {
            Coefficient::C11 => "C11",
            Coefficient::C12 => "C12",
        }
    }
}

/// Checks `C(q^2 x) = C(x)` for a printed row-one coefficient.
pub fn ellipticity_check(coefficient: Coefficient, base: Base<f64>, x: C) -> Result<VerificationReport> {
    let q = base.q();
    // zeros of theta_q(x) and theta_q(x/q) lie on the same spiral
    th_den(base, x, "theta_q(x)")?;
    let i = match coefficient {
        Coefficient::C11 => 0,
        Coefficient::C12 => 1,
    };
    let at = |y| -> Result<C> { Ok(c1_printed(base, y)?[i]) };
    let lhs = at(q * q * x)?;
    let rhs = at(x)?;
    Ok(VerificationReport::new(
        format!("ellipticity_{}", coefficient.name()),
        q,
        None,
        Some(x),
        lhs,
        rhs,
        ELLIPTICITY_TOL,
    ))
}

/// Largest relative difference between the resummations on two spirals
/// over the sample, with the point where it occurs.
pub fn stokes_witness(base: Base<f64>, lambda1: C, lambda2: C, xs: &[C]) -> Result<(C, f64)> {
    let mut best = (C::new(0.0, 0.0), 0.0);
    for &x in xs {
        let a = resum_2f0(base, lambda1, x)?;
        let b = resum_2f0(base, lambda2, x)?;
        let d = (a - b).norm() / a.norm().max(b.norm());
        if d > best.1 {
            best = (x, d);
        }
    }
    if xs.is_empty() {
        return Err(QError::InvalidConfig("stokes witness needs sample points".into()));
    }
    Ok(best)
}

/// `u1(x) u2~(qx) - u1(qx) u2~(x)` and the largest of the two products.
pub fn wronskian(base: Base<f64>, lambda: C, x: C) -> Result<(C, f64)> {
    let q = base.q();
    let u1 = |y| eval_solution(SolutionId::U1, base, y, None);
    let u2 = |y| eval_solution(SolutionId::U2Resummed, base, y, Some(lambda));
    let a = u1(x)? * u2(q * x)?;
    let b = u1(q * x)? * u2(x)?;
    Ok((a - b, a.norm().max(b.norm())))
}
