//! Copula families, axiom checks and the empirical copula.

pub mod axioms;
pub mod empirical;
pub mod families;
pub mod grid;

pub use axioms::{check_copula_axioms, check_grid, copula_h_volume, AxiomReport, CellViolation};
pub use empirical::empirical_copula;
pub use families::{exponential_survival, patchwork_mass, CopulaSpec, SurvivalFn};
pub use grid::CopulaSurfaceGrid;

use crate::error::Result;

pub fn eval_gaussian_copula(u: f64, v: f64, rho: f64) -> Result<f64> {
    CopulaSpec::Gaussian { rho }.eval(u, v)
}

pub fn eval_reflection_copula(u: f64, v: f64, t: f64, h: f64) -> Result<f64> {
    CopulaSpec::Reflection { t, h }.eval(u, v)
}

pub fn eval_correlated_reflection_copula(u: f64, v: f64, t: f64, h: f64, rho: f64) -> Result<f64> {
    CopulaSpec::CorrelatedReflection { t, h, rho }.eval(u, v)
}

pub fn eval_exp_barrier_copula(u: f64, v: f64, t: f64, h: f64, lambda: f64) -> Result<f64> {
    CopulaSpec::ExpBarrier { t, h, lambda }.eval(u, v)
}

pub fn eval_random_barrier_copula(u: f64, v: f64, t: f64, survival: SurvivalFn) -> Result<f64> {
    CopulaSpec::RandomBarrier { t, survival }.eval(u, v)
}

pub fn eval_patchwork_copula(u: f64, v: f64, eta: f64, rho: f64) -> Result<f64> {
    CopulaSpec::Patchwork { eta, rho }.eval(u, v)
}
