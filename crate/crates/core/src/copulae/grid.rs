use std::io::{self, Write};

use rayon::prelude::*;

use super::families::CopulaSpec;
use crate::error::{ensure, Result};

/// Values C(i/n, j/n) for i, j = 0..=n, stored row-major with i indexing u.
#[derive(Debug, Clone, PartialEq)]
pub struct CopulaSurfaceGrid {
    pub resolution: usize,
    pub values: Vec<f64>,
}

impl CopulaSurfaceGrid {
    pub fn zeros(resolution: usize) -> Self {
        Self {
            resolution,
            values: vec![0.0; (resolution + 1) * (resolution + 1)],
        }
    }

    /// Evaluates `spec` on the grid, one rayon task per row.
    pub fn from_spec(spec: &CopulaSpec, resolution: usize) -> Result<Self> {
        spec.validate()?;
        ensure(resolution >= 1, || "grid resolution must be at least 1".into())?;
        let n = resolution;
        let rows: Result<Vec<Vec<f64>>> = (0..=n)
            .into_par_iter()
            .map(|i| {
                let u = i as f64 / n as f64;
                (0..=n).map(|j| spec.eval_valid(u, j as f64 / n as f64)).collect()
            })
            .collect();
        Ok(Self {
            resolution,
            values: rows?.concat(),
        })
    }

    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        i as f64 / self.resolution as f64
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * (self.resolution + 1) + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let n = self.resolution;
        self.values[i * (n + 1) + j] = value;
    }

    /// H-volume of the grid cell [u_i, u_{i+1}] × [v_j, v_{j+1}].
    pub fn cell_volume(&self, i: usize, j: usize) -> f64 {
        self.get(i + 1, j + 1) - self.get(i, j + 1) - self.get(i + 1, j) + self.get(i, j)
    }

    /// Writes `u,v,<value_name>` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W, value_name: &str) -> io::Result<()> {
        writeln!(out, "u,v,{value_name}")?;
        let n = self.resolution;
        for i in 0..=n {
            for j in 0..=n {
                writeln!(out, "{:.16e},{:.16e},{:.16e}", self.coord(i), self.coord(j), self.get(i, j))?;
            }
        }
        Ok(())
    }
}
