use super::batch::{run_paths, PathBatch, PathRecord};
use super::config::SimConfig;
use super::rng::{NormalStream, Stream};
use crate::error::{Error, Result};
use crate::spread_analytics::{Cap, MultiBarrierParams};

/// Hard limit on reflections per path.
pub const MAX_REFLECTIONS: u64 = 1_000_000;

/// Multi-barrier model with at most `cap` reflections.
///
/// In regime k the spread D = X − Y moves by (1 + (−1)^k ρ)ΔB^X − √(1−ρ²)ΔB^Y.
/// When it crosses α_{k+1} on the grid it is snapped there and k increases.
pub fn simulate_multibarrier(params: &MultiBarrierParams, cap: Cap, config: &SimConfig) -> Result<PathBatch> {
    let mut out = simulate_multibarrier_caps(params, &[cap], config)?;
    Ok(out.pop().expect("one batch per cap"))
}

/// Several caps driven by the same Brownian increments, one batch per cap.
pub fn simulate_multibarrier_caps(
    params: &MultiBarrierParams,
    caps: &[Cap],
    config: &SimConfig,
) -> Result<Vec<PathBatch>> {
    params.validate()?;
    let grid = config.grid()?;
    let sd = grid.dt.sqrt();
    let rho = params.rho;
    let scale = [1.0 + rho, 1.0 - rho];
    let cross = (1.0 - rho * rho).max(0.0).sqrt();
    let per_path = run_paths(config.n_paths, |p| {
        let mut zx = NormalStream::new(config.seed, Stream::X, p);
        let mut zy = NormalStream::new(config.seed, Stream::Y, p);
        let mut recs: Vec<PathRecord> =
            caps.iter().map(|_| PathRecord::with_capacity(grid.observed.len())).collect();
        let mut d = vec![0.0; caps.len()];
        let mut k = vec![0u64; caps.len()];
        let mut x = 0.0;
        let mut slot = 0;
        grid.observe(0, &mut slot, |_| recs.iter_mut().for_each(|r| r.push(0.0, 0.0)));
        for step in 1..=grid.n_steps {
            let dx = sd * zx.next();
            let dw = sd * zy.next();
            x += dx;
            for c in 0..caps.len() {
                let even = k[c] % 2 == 0;
                d[c] += scale[(!even) as usize] * dx - cross * dw;
                let crossed = if even { d[c] >= params.eta } else { d[c] <= params.nu };
                if crossed && caps[c].allows(k[c]) {
                    k[c] += 1;
                    d[c] = params.alpha(k[c]);
                    recs[c].reflection_times.push(step as f64 * grid.dt);
                    if k[c] >= MAX_REFLECTIONS {
                        return Err(Error::Numerical {
                            routine: "simulate_multibarrier",
                            detail: format!("path {p} hit the limit of {MAX_REFLECTIONS} reflections"),
                        });
                    }
                }
            }
            grid.observe(step, &mut slot, |_| {
                for (r, &dc) in recs.iter_mut().zip(&d) {
                    r.push(x, dc);
                }
            });
        }
        Ok(recs)
    })?;
    let mut by_cap: Vec<Vec<PathRecord>> = caps.iter().map(|_| Vec::with_capacity(config.n_paths)).collect();
    for recs in per_path {
        for (c, r) in recs.into_iter().enumerate() {
            by_cap[c].push(r);
        }
    }
    Ok(by_cap
        .into_iter()
        .map(|records| PathBatch::assemble(config.seed, &grid, records, true))
        .collect())
}
