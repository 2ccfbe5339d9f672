use std::io::{self, Write};

use rayon::prelude::*;

use super::config::TimeGrid;
use crate::error::Result;

/// Simulated (X, Y) trajectories at the recorded times.
///
/// `x`, `y` and `spread` are `n_paths × times.len()`, row-major by path.
/// `spread` is the X − Y the scheme evolved, so snapped values are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct PathBatch {
    pub seed: u64,
    pub dt: f64,
    pub n_paths: usize,
    pub times: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub spread: Vec<f64>,
    /// Reflections performed by the horizon, per path.
    pub reflections: Option<Vec<u64>>,
    /// Grid times of every reflection, per path.
    pub reflection_times: Option<Vec<Vec<f64>>>,
}

/// One simulated path before assembly.
#[derive(Debug, Clone, Default)]
pub(crate) struct PathRecord {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub spread: Vec<f64>,
    pub reflection_times: Vec<f64>,
}

impl PathRecord {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            x: Vec::with_capacity(n),
            y: Vec::with_capacity(n),
            spread: Vec::with_capacity(n),
            reflection_times: Vec::new(),
        }
    }

    #[inline]
    pub fn push(&mut self, x: f64, d: f64) {
        self.x.push(x);
        self.y.push(x - d);
        self.spread.push(d);
    }

    #[inline]
    pub fn push_xy(&mut self, x: f64, y: f64) {
        self.x.push(x);
        self.y.push(y);
        self.spread.push(x - y);
    }
}

/// Runs `path_fn` for every path index in parallel, keeping index order.
pub(crate) fn run_paths<T, F>(n_paths: usize, path_fn: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync,
{
    (0..n_paths as u64).into_par_iter().map(&path_fn).collect()
}

impl PathBatch {
    pub(crate) fn assemble(
        seed: u64,
        grid: &TimeGrid,
        records: Vec<PathRecord>,
        with_reflections: bool,
    ) -> Self {
        let n_paths = records.len();
        let n_obs = grid.observed.len();
        let mut b = PathBatch {
            seed,
            dt: grid.dt,
            n_paths,
            times: grid.times(),
            x: Vec::with_capacity(n_paths * n_obs),
            y: Vec::with_capacity(n_paths * n_obs),
            spread: Vec::with_capacity(n_paths * n_obs),
            reflections: None,
            reflection_times: None,
        };
        let mut counts = Vec::new();
        let mut times = Vec::new();
        for r in records {
            b.x.extend_from_slice(&r.x);
            b.y.extend_from_slice(&r.y);
            b.spread.extend_from_slice(&r.spread);
            if with_reflections {
                counts.push(r.reflection_times.len() as u64);
                times.push(r.reflection_times);
            }
        }
        if with_reflections {
            b.reflections = Some(counts);
            b.reflection_times = Some(times);
        }
        b
    }

    pub fn n_obs(&self) -> usize {
        self.times.len()
    }

    /// Index of the recorded time closest to `t`.
    pub fn slot(&self, t: f64) -> usize {
        self.times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }

    fn column(&self, data: &[f64], slot: usize) -> Vec<f64> {
        let n = self.n_obs();
        (0..self.n_paths).map(|p| data[p * n + slot]).collect()
    }

    pub fn x_at(&self, slot: usize) -> Vec<f64> {
        self.column(&self.x, slot)
    }

    pub fn y_at(&self, slot: usize) -> Vec<f64> {
        self.column(&self.y, slot)
    }

    pub fn spread_at(&self, slot: usize) -> Vec<f64> {
        self.column(&self.spread, slot)
    }

    /// (X, Y) pairs at a recorded time.
    pub fn pairs_at(&self, slot: usize) -> Vec<(f64, f64)> {
        let n = self.n_obs();
        (0..self.n_paths)
            .map(|p| (self.x[p * n + slot], self.y[p * n + slot]))
            .collect()
    }

    /// Number of reflections each path made up to time `t`.
    pub fn reflections_by(&self, t: f64) -> Option<Vec<u64>> {
        let times = self.reflection_times.as_ref()?;
        Some(times.iter().map(|ts| ts.iter().filter(|&&s| s <= t).count() as u64).collect())
    }

    /// Writes `path_id,t,X,Y` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "path_id,t,X,Y")?;
        let n = self.n_obs();
        for p in 0..self.n_paths {
            for (s, t) in self.times.iter().enumerate() {
                let i = p * n + s;
                writeln!(out, "{p},{t:.16e},{:.16e},{:.16e}", self.x[i], self.y[i])?;
            }
        }
        Ok(())
    }
}
