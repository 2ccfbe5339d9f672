//! Rank-based empirical copula.

use super::grid::CopulaSurfaceGrid;
use crate::error::{ensure, Result};

pub const MIN_SAMPLES: usize = 100;

/// Ordinal ranks 1..=N; ties keep input order.
fn ranks(values: impl Iterator<Item = f64>) -> Vec<usize> {
    let mut idx: Vec<(usize, f64)> = values.enumerate().collect();
    idx.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut r = vec![0; idx.len()];
    for (rank, (i, _)) in idx.into_iter().enumerate() {
        r[i] = rank + 1;
    }
    r
}

/// Empirical copula on an `resolution`² grid.
///
/// Pseudo-observations are rank/(N+1); the value at (u_i, v_j) is the
/// fraction of pairs with both pseudo-observations at or below the grid point.
pub fn empirical_copula(samples: &[(f64, f64)], resolution: usize) -> Result<CopulaSurfaceGrid> {
    let n_obs = samples.len();
    ensure(n_obs >= MIN_SAMPLES, || {
        format!("empirical copula needs at least {MIN_SAMPLES} samples, got {n_obs}")
    })?;
    ensure(resolution >= 1, || "grid resolution must be at least 1".into())?;
    ensure(samples.iter().all(|(x, y)| !x.is_nan() && !y.is_nan()), || {
        "samples must not contain NaN".into()
    })?;
    let rx = ranks(samples.iter().map(|s| s.0));
    let ry = ranks(samples.iter().map(|s| s.1));
    let n = resolution;
    // rank/(N+1) ≤ i/n  ⇔  i ≥ ceil(rank·n/(N+1)), exact in integers.
    let cell = |rank: usize| (rank * n).div_ceil(n_obs + 1);
    let mut counts = vec![0u64; (n + 1) * (n + 1)];
    for (a, b) in rx.iter().zip(&ry) {
        counts[cell(*a) * (n + 1) + cell(*b)] += 1;
    }
    // 2-D prefix sums turn cell counts into joint CDF counts.
    for i in 0..=n {
        for j in 0..=n {
            let mut c = counts[i * (n + 1) + j];
            if i > 0 {
                c += counts[(i - 1) * (n + 1) + j];
            }
            if j > 0 {
                c += counts[i * (n + 1) + j - 1];
            }
            if i > 0 && j > 0 {
                c -= counts[(i - 1) * (n + 1) + j - 1];
            }
            counts[i * (n + 1) + j] = c;
        }
    }
    Ok(CopulaSurfaceGrid {
        resolution,
        values: counts.iter().map(|&c| c as f64 / n_obs as f64).collect(),
    })
}
