//! First kind (spiral) and second kind (contour) q-Laplace transforms and
//! the resummation pipelines for `2phi0` and `r phi0`.

pub mod contour;
pub mod pipeline;
pub mod spiral;

pub use contour::{
    qairy_closed_form, qairy_kernel, qlaplace_contour, qlaplace_contour_fixed, residue_laplace_qairy, Contour,
    ContourValue,
};
pub use pipeline::{resum_2f0, resum_2f0_detailed, resum_rf0, resum_rf0_detailed, rf0_sign};
pub use spiral::{qlaplace_spiral, qlaplace_spiral_adaptive, Spiral, SpiralSum};
