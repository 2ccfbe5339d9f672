//! Dynamic copulae built from reflected Brownian motions.
//!
//! * [`math_kernels`]: normal CDFs, quantiles, Brownian extrema laws.
//! * [`copulae`]: closed-form copula families, axiom checks, empirical copula.
//! * [`spread_analytics`]: survival of `X_t − Y_t`, the multi-barrier recursion
//!   and calibration of its correlation.
//! * [`simulators`]: seeded Monte Carlo engines for every model.

pub mod copulae;
pub mod error;
pub mod math_kernels;
pub mod simulators;
pub mod spread_analytics;

pub use error::{Error, Result};
