//! Browser bindings for the demo page in `www/`.
//!
//! The plain functions do the work and are usable natively; the
//! `#[wasm_bindgen]` wrappers only convert errors into JS exceptions.

use wasm_bindgen::prelude::*;

use refcopula::copulae::{check_grid, CopulaSpec, CopulaSurfaceGrid};
use refcopula::spread_analytics::{calibrate_rho, mb_survival_limit, mb_survival_sequence, MultiBarrierParams};
use refcopula::{Error, Result};

pub const MAX_RESOLUTION: usize = 400;
const LIMIT_TOL: f64 = 1e-9;
const CALIBRATION_TOL: f64 = 1e-7;

/// Copula family from its name; parameters it does not use are ignored.
pub fn copula_spec(family: &str, t: f64, h: f64, rho: f64, lambda: f64) -> Result<CopulaSpec> {
    let spec = match family {
        "gaussian" => CopulaSpec::Gaussian { rho },
        "reflection" => CopulaSpec::Reflection { t, h },
        "correlated_reflection" => CopulaSpec::CorrelatedReflection { t, h, rho },
        "exp_barrier" => CopulaSpec::ExpBarrier { t, h, lambda },
        "patchwork" => CopulaSpec::Patchwork { eta: h, rho },
        "frechet_upper" => CopulaSpec::FrechetUpper,
        "frechet_lower" => CopulaSpec::FrechetLower,
        "independence" => CopulaSpec::Independence,
        other => return Err(Error::Domain(format!("unknown copula family {other:?}"))),
    };
    spec.validate()?;
    Ok(spec)
}

/// Grid values C(i/n, j/n), row-major with i indexing u, followed by the
/// number of cells with negative volume.
pub fn surface(family: &str, t: f64, h: f64, rho: f64, lambda: f64, resolution: usize) -> Result<Vec<f64>> {
    if !(1..=MAX_RESOLUTION).contains(&resolution) {
        return Err(Error::Domain(format!("resolution must lie in 1..={MAX_RESOLUTION}")));
    }
    let grid = CopulaSurfaceGrid::from_spec(&copula_spec(family, t, h, rho, lambda)?, resolution)?;
    let report = check_grid(&grid);
    let mut values = grid.values;
    values.push(report.negative_cells as f64);
    Ok(values)
}

/// x grid with `points` evenly spaced values on [from, to].
pub fn x_grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && from < to && points >= 2) {
        return Err(Error::Domain("need from < to and at least two points".into()));
    }
    let last = (points - 1) as f64;
    Ok((0..points).map(|i| from + (to - from) * i as f64 / last).collect())
}

/// Curves p_0, …, p_{n_max} and the limit, each `points` long, concatenated.
#[allow(clippy::too_many_arguments)]
pub fn survival_curves(
    nu: f64,
    eta: f64,
    rho: f64,
    t: f64,
    n_max: u32,
    from: f64,
    to: f64,
    points: usize,
) -> Result<Vec<f64>> {
    let params = MultiBarrierParams::new(nu, eta, rho)?;
    let xs = x_grid(from, to, points)?;
    let rows = n_max as usize + 2;
    let mut out = vec![0.0; rows * points];
    for (j, &x) in xs.iter().enumerate() {
        for (k, p) in mb_survival_sequence(n_max as u64, t, x, &params)?.into_iter().enumerate() {
            out[k * points + j] = p;
        }
        out[(rows - 1) * points + j] = mb_survival_limit(t, x, &params, LIMIT_TOL)?;
    }
    Ok(out)
}

/// Calibrated correlation and its diagnostics.
#[wasm_bindgen]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub rho: f64,
    pub achieved: f64,
    pub iterations: u32,
    pub range_lo: f64,
    pub range_hi: f64,
}

pub fn fit(target: f64, z: f64, nu: f64, eta: f64, t: f64) -> Result<Fit> {
    let c = calibrate_rho(target, z, nu, eta, t, CALIBRATION_TOL)?;
    Ok(Fit {
        rho: c.rho,
        achieved: c.achieved,
        iterations: c.iterations,
        range_lo: c.valid_range.0,
        range_hi: c.valid_range.1,
    })
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = copulaSurface)]
pub fn copula_surface(
    family: &str,
    t: f64,
    h: f64,
    rho: f64,
    lambda: f64,
    resolution: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    surface(family, t, h, rho, lambda, resolution).map_err(js)
}

#[wasm_bindgen(js_name = survivalCurves)]
#[allow(clippy::too_many_arguments)]
pub fn survival_curves_js(
    nu: f64,
    eta: f64,
    rho: f64,
    t: f64,
    n_max: u32,
    from: f64,
    to: f64,
    points: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    survival_curves(nu, eta, rho, t, n_max, from, to, points).map_err(js)
}

#[wasm_bindgen]
pub fn calibrate(target: f64, z: f64, nu: f64, eta: f64, t: f64) -> std::result::Result<Fit, JsError> {
    fit(target, z, nu, eta, t).map_err(js)
}
