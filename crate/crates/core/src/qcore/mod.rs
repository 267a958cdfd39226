//! Scalar q-objects: shifted factorials, theta, basic hypergeometric
//! series, q-exponentials and the two q-Airy analogues.

pub mod airy;
pub mod base;
pub mod hyper;
pub mod pochhammer;
pub mod qexp;
pub mod theta;

pub use airy::{aiq_mirror, mirror_factor, qairy_aiq, ramanujan_aq};
pub use base::{spiral_distance, Base, EvalConfig};
pub use hyper::{phi, ConvergenceClass, HyperSpec};
pub use pochhammer::{
    qpochhammer_finite, qpochhammer_finite_many, qpochhammer_infinite, qpochhammer_infinite_many,
    QProduct,
};
pub use qexp::{eq_inverse_base_series, eq_series, eq_small, eq_small_scaled, Eq_big, Eq_series};
pub use theta::{sign_character, theta, theta_bilateral, theta_product, theta_recip, theta_scaled};
