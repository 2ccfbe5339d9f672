use super::batch::{run_paths, PathBatch, PathRecord};
use super::config::SimConfig;
use super::rng::{NormalStream, Stream};
use crate::error::{ensure, Result};

/// X a Brownian motion, Y = −X until X first reaches h on the grid, then
/// Y = X − 2h.
pub fn simulate_reflection_pair(h: f64, config: &SimConfig) -> Result<PathBatch> {
    ensure(h > 0.0 && h.is_finite(), || format!("barrier must be positive, got {h}"))?;
    let grid = config.grid()?;
    let sd = grid.dt.sqrt();
    let records = run_paths(config.n_paths, |p| {
        let mut z = NormalStream::new(config.seed, Stream::X, p);
        let mut rec = PathRecord::with_capacity(grid.observed.len());
        let mut slot = 0;
        grid.observe(0, &mut slot, |_| rec.push(0.0, 0.0));
        let mut x = 0.0;
        let mut hit = false;
        for step in 1..=grid.n_steps {
            x += sd * z.next();
            if !hit && x >= h {
                hit = true;
                rec.reflection_times.push(step as f64 * grid.dt);
            }
            let d = if hit { 2.0 * h } else { 2.0 * x };
            grid.observe(step, &mut slot, |_| rec.push(x, d));
        }
        Ok(rec)
    })?;
    Ok(PathBatch::assemble(config.seed, &grid, records, true))
}
