//! Pointwise verification reports shared by the formal, resummation and
//! connection layers.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// Complex number serialized as `[re, im]`.
pub type Pair = [f64; 2];

pub fn pair<T: Real>(z: Complex<T>) -> Pair {
    [z.re.as_f64(), z.im.as_f64()]
}

pub fn unpair(p: Pair) -> Complex<f64> {
    Complex::new(p[0], p[1])
}

/// One identity checked at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub q: Pair,
    pub lambda: Option<Pair>,
    pub x: Option<Pair>,
    pub lhs: Pair,
    pub rhs: Pair,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

impl VerificationReport {
    /// Builds a report and decides `pass`: relative error within `tol`, or
    /// both sides below `tol` in modulus with absolute error within `tol`.
    pub fn new(
        identity_id: impl Into<String>,
        q: Complex<f64>,
        lambda: Option<Complex<f64>>,
        x: Option<Complex<f64>>,
        lhs: Complex<f64>,
        rhs: Complex<f64>,
        tol: f64,
    ) -> Self {
        let abs_err = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel_err = if scale > 0.0 { abs_err / scale } else { 0.0 };
        let tiny = lhs.norm() < tol && rhs.norm() < tol;
        let pass = rel_err.is_finite() && (rel_err <= tol || (tiny && abs_err <= tol));
        Self {
            identity_id: identity_id.into(),
            q: pair(q),
            lambda: lambda.map(pair),
            x: x.map(pair),
            lhs: pair(lhs),
            rhs: pair(rhs),
            abs_err,
            rel_err,
            tol,
            pass,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    /// Report for a check whose error is a deviation already measured
    /// elsewhere (coefficient comparisons, stability probes).
    pub fn from_deviation(
        identity_id: impl Into<String>,
        q: Complex<f64>,
        deviation: f64,
        tol: f64,
    ) -> Self {
        Self {
            identity_id: identity_id.into(),
            q: pair(q),
            lambda: None,
            x: None,
            lhs: [0.0, 0.0],
            rhs: [0.0, 0.0],
            abs_err: deviation,
            rel_err: deviation,
            tol,
            pass: deviation.is_finite() && deviation <= tol,
            metadata: BTreeMap::new(),
        }
    }
}
