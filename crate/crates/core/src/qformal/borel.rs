use num_complex::Complex;

use super::operator::QDiffOperator;
use super::series::FormalPowerSeries;
use crate::error::{QError, Result};
use crate::qcore::Base;
use crate::report::VerificationReport;
use crate::scalar::{qtri, Real};

/// q-Borel transform of the first kind at level `s`:
/// `a_n -> a_n (q^s)^{n(n-1)/2}`. Level 1 is the ordinary transform.
pub fn qborel_plus<T: Real>(f: &FormalPowerSeries<T>, base: Base<T>, level: u32) -> FormalPowerSeries<T> {
    let qs = base.power(level.max(1)).q();
    f.map(|n, a| a * qtri(qs, n as i64))
}

/// Inverse coefficient scaling of [`qborel_plus`].
pub fn qborel_plus_inverse<T: Real>(
    f: &FormalPowerSeries<T>,
    base: Base<T>,
    level: u32,
) -> FormalPowerSeries<T> {
    let qs = base.power(level.max(1)).q();
    f.map(|n, a| a / qtri(qs, n as i64))
}

/// q-Borel transform of the second kind: `a_n -> a_n q^{-n(n-1)/2}`.
pub fn qborel_minus<T: Real>(f: &FormalPowerSeries<T>, base: Base<T>) -> FormalPowerSeries<T> {
    f.map(|n, a| a / qtri(base.q(), n as i64))
}

/// Checks `B^-(t^m sigma^l f) = q^{-m(m-1)/2} tau^m sigma^{l-m} B^- f`
/// coefficientwise; the report carries the largest relative deviation.
pub fn check_operational_identity<T: Real>(
    m: u32,
    l: u32,
    f: &FormalPowerSeries<T>,
    base: Base<T>,
) -> Result<VerificationReport> {
    if l < m {
        return Err(QError::NegativeShift(l as i64 - m as i64));
    }
    let one = Complex::new(T::one(), T::zero());
    let lhs = qborel_minus(
        &QDiffOperator::from_triples(&[(m, l, one)]).apply(f, base),
        base,
    );
    let c = qtri(base.q(), m as i64).inv();
    let rhs = QDiffOperator::from_triples(&[(m, l - m, c)]).apply(&qborel_minus(f, base), base);
    let dev = lhs.max_rel_deviation(&rhs).as_f64();
    let q = Complex::new(base.q().re.as_f64(), base.q().im.as_f64());
    Ok(VerificationReport::from_deviation("operational", q, dev, 1e-13)
        .with_meta("m", m)
        .with_meta("l", l)
        .with_meta("order", f.order()))
}
