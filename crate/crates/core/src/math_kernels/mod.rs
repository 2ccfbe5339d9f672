//! Scalar numeric primitives shared by the rest of the crate.

pub mod bivariate;
pub mod brownian;
pub mod normal;
pub mod quadrature;

pub use bivariate::{bivariate_normal_cdf, bvn_cdf};
pub use brownian::{
    brownian_max_joint_cdf, brownian_min_joint_cdf, hitting_time_cdf, stopped_increment_cdf,
};
pub use normal::{
    cdf, log_cdf, pdf, pdf_times_mills, quantile, sf, std_normal_cdf, std_normal_quantile,
};

/// Upper Fréchet bound M(u, v) = min(u, v).
#[inline]
pub fn frechet_upper(u: f64, v: f64) -> f64 {
    u.min(v)
}

/// Lower Fréchet bound W(u, v) = max(u + v − 1, 0).
#[inline]
pub fn frechet_lower(u: f64, v: f64) -> f64 {
    (u + v - 1.0).max(0.0)
}
