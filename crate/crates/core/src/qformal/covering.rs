use num_complex::Complex;

use crate::error::Result;
use crate::qcore::Base;
use crate::scalar::Real;

/// `v(t) = u(t^2)`.
pub fn covering_transform<T: Real, F>(u: F) -> impl Fn(Complex<T>) -> Result<Complex<T>>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    move |t| u(t * t)
}

/// Principal square root `p` of the base, the base of the covered equation.
pub fn covering_base<T: Real>(base: Base<T>) -> Base<T> {
    Base::new(base.q().sqrt()).expect("sqrt of a valid base is valid")
}
