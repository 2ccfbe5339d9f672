use serde::{Deserialize, Serialize};

use super::batch::{run_paths, PathBatch, PathRecord};
use super::config::SimConfig;
use super::rng::{NormalStream, Stream};
use crate::error::{ensure, Result};

/// ρ(x) = ρ₁ for x ≤ ν, ρ₂ for x ≥ η, linear in between.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalCorrParams {
    pub nu: f64,
    pub eta: f64,
    pub rho1: f64,
    pub rho2: f64,
}

impl LocalCorrParams {
    pub fn new(nu: f64, eta: f64, rho1: f64, rho2: f64) -> Result<Self> {
        let p = Self { nu, eta, rho1, rho2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.nu < self.eta && self.nu.is_finite() && self.eta.is_finite(), || {
            format!("need nu < eta, got nu = {}, eta = {}", self.nu, self.eta)
        })?;
        ensure(self.rho1.abs() < 1.0 && self.rho2.abs() < 1.0, || {
            format!("need |rho1|, |rho2| < 1, got {}, {}", self.rho1, self.rho2)
        })
    }

    #[inline]
    pub fn rho(&self, x: f64) -> f64 {
        if x <= self.nu {
            self.rho1
        } else if x >= self.eta {
            self.rho2
        } else {
            self.rho1 + (self.rho2 - self.rho1) * (x - self.nu) / (self.eta - self.nu)
        }
    }
}

/// Euler scheme for dX = dB^X, dY = ρ(X−Y) dB^X + √(1−ρ(X−Y)²) dB^Y.
pub fn simulate_local_correlation(params: &LocalCorrParams, config: &SimConfig) -> Result<PathBatch> {
    params.validate()?;
    let grid = config.grid()?;
    let sd = grid.dt.sqrt();
    let records = run_paths(config.n_paths, |p| {
        let mut zx = NormalStream::new(config.seed, Stream::X, p);
        let mut zy = NormalStream::new(config.seed, Stream::Y, p);
        let mut rec = PathRecord::with_capacity(grid.observed.len());
        let mut slot = 0;
        grid.observe(0, &mut slot, |_| rec.push(0.0, 0.0));
        let (mut x, mut y) = (0.0, 0.0);
        for step in 1..=grid.n_steps {
            let r = params.rho(x - y);
            let dx = sd * zx.next();
            let dw = sd * zy.next();
            x += dx;
            y += r * dx + (1.0 - r * r).sqrt() * dw;
            grid.observe(step, &mut slot, |_| rec.push_xy(x, y));
        }
        Ok(rec)
    })?;
    Ok(PathBatch::assemble(config.seed, &grid, records, false))
}
