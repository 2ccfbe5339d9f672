//! Calibration of the multi-barrier correlation to a target survival.

use serde::Serialize;

use super::multibarrier::{mb_survival_limit, MultiBarrierParams};
use crate::error::{ensure, Error, Result};
use crate::math_kernels::cdf;

const SCAN_POINTS: usize = 41;
const MAX_BISECTIONS: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Calibration {
    pub rho: f64,
    /// Survival reached at `rho`.
    pub achieved: f64,
    /// Survival evaluations spent (scan plus bisection).
    pub iterations: u32,
    pub valid_range: (f64, f64),
}

/// Range [0, Φ(−z/(2√t)) + Φ((z−2η)/(2√t))] of reachable targets for 0 < z < η.
pub fn achievable_range(z: f64, eta: f64, t: f64) -> (f64, f64) {
    let st = t.sqrt();
    (0.0, cdf(-z / (2.0 * st)) + cdf((z - 2.0 * eta) / (2.0 * st)))
}

/// Finds ρ in [−1, 1] with P(X_t − Y^{N_t}_t ≥ z) within `tol` of `target`.
///
/// A 41-point scan over ρ looks for a sign change, then bisection refines it.
/// Monotonicity in ρ is not assumed.
pub fn calibrate_rho(target: f64, z: f64, nu: f64, eta: f64, t: f64, tol: f64) -> Result<Calibration> {
    MultiBarrierParams::new(nu, eta, 0.0)?;
    ensure(t > 0.0 && t.is_finite(), || format!("t must be positive, got {t}"))?;
    ensure(tol > 0.0, || format!("tol must be positive, got {tol}"))?;
    ensure(z > 0.0 && z < eta, || format!("calibration needs 0 < z < eta, got z = {z}, eta = {eta}"))?;
    let valid_range = achievable_range(z, eta, t);
    if !(target >= valid_range.0 && target <= valid_range.1) {
        return Err(Error::Range { what: "target", value: target, lo: valid_range.0, hi: valid_range.1 });
    }
    let mut iterations = 0;
    let mut f = |rho: f64| -> Result<f64> {
        iterations += 1;
        let params = MultiBarrierParams { nu, eta, rho };
        Ok(mb_survival_limit(t, z, &params, tol / 10.0)? - target)
    };

    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| (2 * i) as f64 / (SCAN_POINTS - 1) as f64 - 1.0)
        .collect();
    let mut values = Vec::with_capacity(SCAN_POINTS);
    for &rho in &grid {
        let g = f(rho)?;
        if g.abs() <= tol {
            let achieved = g + target;
            return Ok(Calibration { rho, achieved, iterations, valid_range });
        }
        values.push(g);
    }
    let i = (0..SCAN_POINTS - 1)
        .find(|&i| values[i].signum() != values[i + 1].signum())
        .ok_or_else(|| Error::Numerical {
            routine: "calibrate_rho",
            detail: "no sign change found on the correlation scan".into(),
        })?;
    let (mut lo, mut hi) = (grid[i], grid[i + 1]);
    let lo_sign = values[i].signum();
    let mut best = (lo, values[i]);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let g = f(mid)?;
        if g.abs() < best.1.abs() {
            best = (mid, g);
        }
        if g.abs() <= tol || hi - lo < f64::EPSILON {
            break;
        }
        if g.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if best.1.abs() > tol {
        return Err(Error::Numerical {
            routine: "calibrate_rho",
            detail: format!("bisection stalled with residual {:.3e}", best.1),
        });
    }
    Ok(Calibration { rho: best.0, achieved: best.1 + target, iterations, valid_range })
}
