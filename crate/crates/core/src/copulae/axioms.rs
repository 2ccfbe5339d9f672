//! Boundary, 2-increasing and Fréchet-bound checks.

use serde::Serialize;

use super::families::CopulaSpec;
use super::grid::CopulaSurfaceGrid;
use crate::error::{ensure, Result};
use crate::math_kernels::{frechet_lower, frechet_upper};

/// Cells with H-volume below this count as violations.
pub const VOLUME_TOL: f64 = -1e-9;
const BOUNDARY_TOL: f64 = 1e-12;
const FRECHET_TOL: f64 = 1e-12;
const WORST_KEPT: usize = 5;

/// H-volume of [u1, u2] × [v1, v2].
pub fn copula_h_volume(spec: &CopulaSpec, u1: f64, u2: f64, v1: f64, v2: f64) -> Result<f64> {
    ensure(u1 <= u2 && v1 <= v2, || {
        format!("malformed rectangle [{u1}, {u2}] x [{v1}, {v2}]")
    })?;
    ensure([u1, u2, v1, v2].iter().all(|x| (0.0..=1.0).contains(x)), || {
        "rectangle must lie in the unit square".into()
    })?;
    spec.validate()?;
    let c = |u, v| spec.eval_valid(u, v);
    Ok(c(u2, v2)? - c(u1, v2)? - c(u2, v1)? + c(u1, v1)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellViolation {
    pub i: usize,
    pub j: usize,
    pub u: f64,
    pub v: f64,
    pub volume: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub resolution: usize,
    pub passed: bool,
    /// Largest deviation from C(u,0)=C(0,v)=0, C(u,1)=u, C(1,v)=v.
    pub boundary_max_error: f64,
    /// Largest amount by which a value leaves [W, M].
    pub frechet_max_violation: f64,
    pub min_cell_volume: f64,
    pub negative_cells: usize,
    /// Most negative cells, worst first.
    pub worst_cells: Vec<CellViolation>,
}

/// Checks the copula axioms of a spec on an `resolution`² grid.
pub fn check_copula_axioms(spec: &CopulaSpec, resolution: usize) -> Result<AxiomReport> {
    ensure(resolution >= 2, || format!("resolution must be ≥ 2, got {resolution}"))?;
    let grid = CopulaSurfaceGrid::from_spec(spec, resolution)?;
    Ok(check_grid(&grid))
}

/// Same checks on precomputed grid values.
pub fn check_grid(grid: &CopulaSurfaceGrid) -> AxiomReport {
    let n = grid.resolution;
    let mut boundary: f64 = 0.0;
    for k in 0..=n {
        let x = grid.coord(k);
        boundary = boundary
            .max(grid.get(k, 0).abs())
            .max(grid.get(0, k).abs())
            .max((grid.get(k, n) - x).abs())
            .max((grid.get(n, k) - x).abs());
    }
    let mut frechet: f64 = 0.0;
    for i in 0..=n {
        for j in 0..=n {
            let (u, v, c) = (grid.coord(i), grid.coord(j), grid.get(i, j));
            frechet = frechet
                .max(frechet_lower(u, v) - c)
                .max(c - frechet_upper(u, v));
        }
    }
    let mut min_volume = f64::INFINITY;
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let vol = grid.cell_volume(i, j);
            min_volume = min_volume.min(vol);
            if vol < VOLUME_TOL || vol.is_nan() {
                bad.push(CellViolation { i, j, u: grid.coord(i), v: grid.coord(j), volume: vol });
            }
        }
    }
    let negative_cells = bad.len();
    bad.sort_by(|a, b| a.volume.total_cmp(&b.volume));
    bad.truncate(WORST_KEPT);
    AxiomReport {
        resolution: n,
        passed: boundary <= BOUNDARY_TOL && frechet <= FRECHET_TOL && negative_cells == 0,
        boundary_max_error: boundary,
        frechet_max_violation: frechet.max(0.0),
        min_cell_volume: min_volume,
        negative_cells,
        worst_cells: bad,
    }
}
