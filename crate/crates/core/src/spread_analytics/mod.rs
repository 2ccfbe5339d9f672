//! Survival of the spread X_t − Y_t under the supported dependence models.

pub mod calibrate;
pub mod gaussian;
pub mod multibarrier;

pub use calibrate::{achievable_range, calibrate_rho, Calibration};
pub use gaussian::{
    exp_barrier_spread_survival, gaussian_rho_for_target, gaussian_spread_survival,
    rbc_spread_survival, reflection_spread_survival,
};
pub use multibarrier::{
    mb_barrier_sequence, mb_hit_time_cdf, mb_survival, mb_survival_limit,
    mb_survival_limit_detail, mb_survival_sequence, Cap, MultiBarrierParams, SeriesLimit,
};
