//! q-special functions, q-Borel/q-Laplace resummation and connection
//! formulas for second order q-difference equations, with pointwise
//! verification of every identity against independent evaluations.
//!
//! Numeric layers (`qcore`, `qformal`, `qresum`) are generic over
//! [`Real`] and work on `Complex<f32>` or `Complex<f64>`. The verification
//! layer (`qconnect`) is `f64`.

pub mod error;
pub mod qconnect;
pub mod qcore;
pub mod qformal;
pub mod qresum;
pub mod report;
pub mod scalar;

pub use error::{QError, Result};
pub use report::VerificationReport;
pub use scalar::{Real, Scaled};

pub use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;
pub type Base64 = qcore::Base<f64>;
pub type Base32 = qcore::Base<f32>;
pub type Config64 = qcore::EvalConfig<f64>;
pub type Config32 = qcore::EvalConfig<f32>;
pub type Series64 = qformal::FormalPowerSeries<f64>;
pub type Operator64 = qformal::QDiffOperator<f64>;
pub type Spiral64 = qresum::Spiral<f64>;
