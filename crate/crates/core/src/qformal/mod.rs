//! Truncated power series, q-difference operators, q-Borel transforms and
//! the covering transformation `x = t^2`.

pub mod borel;
pub mod covering;
pub mod operator;
pub mod series;

pub use borel::{check_operational_identity, qborel_minus, qborel_plus, qborel_plus_inverse};
pub use covering::{covering_base, covering_transform};
pub use operator::{OpTerm, QDiffOperator};
pub use series::FormalPowerSeries;

/// Default truncation order for formal computations.
pub const DEFAULT_ORDER: usize = 32;
