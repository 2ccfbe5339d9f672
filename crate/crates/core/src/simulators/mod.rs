//! Seeded Monte Carlo engines.
//!
//! Every path draws from its own random stream keyed by (seed, driver, path),
//! and paths run in parallel with rayon, so a batch is bit-identical across
//! runs and thread counts.

pub mod batch;
pub mod commodity;
pub mod config;
pub mod local_corr;
pub mod multibarrier;
pub mod reflection;
pub mod rng;
pub mod survival;

pub use batch::PathBatch;
pub use commodity::{
    simulate_two_factor, simulate_two_factor_products, CommodityBatch, Dependence, FactorParams,
    ForwardCurve, ProductSpec, TwoFactorParams, DAYS_PER_YEAR, DELIVERY_CELLS, MONTH,
};
pub use config::{Record, SimConfig, TimeGrid};
pub use local_corr::{simulate_local_correlation, LocalCorrParams};
pub use multibarrier::{simulate_multibarrier, simulate_multibarrier_caps, MAX_REFLECTIONS};
pub use reflection::simulate_reflection_pair;
pub use rng::{gen_normal_increments, NormalStream, Stream};
pub use survival::{empirical_survival, fraction_at_least, proportion_se, SurvivalCurve};
