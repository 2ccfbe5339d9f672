use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};

/// Which grid times a simulation keeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Record {
    /// Every grid time.
    All,
    /// Time 0 and the horizon.
    #[default]
    Terminal,
    /// Time 0 plus the grid times nearest to these.
    Times(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dt: f64,
    pub horizon: f64,
    pub n_paths: usize,
    pub seed: u64,
    #[serde(default)]
    pub record: Record,
}

impl SimConfig {
    pub fn new(dt: f64, horizon: f64, n_paths: usize, seed: u64) -> Self {
        Self { dt, horizon, n_paths, seed, record: Record::Terminal }
    }

    pub fn with_record(mut self, record: Record) -> Self {
        self.record = record;
        self
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.horizon > 0.0 && self.horizon.is_finite(), || {
            format!("horizon must be positive, got {}", self.horizon)
        })?;
        ensure(self.dt > 0.0 && self.dt <= self.horizon, || {
            format!("dt must lie in (0, horizon], got {}", self.dt)
        })?;
        ensure(self.horizon / self.dt < 1e12, || "horizon / dt is too large".into())?;
        ensure(self.n_paths > 0, || "n_paths must be positive".into())?;
        if let Record::Times(ts) = &self.record {
            for &t in ts {
                ensure(t >= 0.0 && t <= self.horizon * (1.0 + 1e-12), || {
                    format!("observation time {t} is outside [0, {}]", self.horizon)
                })?;
            }
        }
        Ok(())
    }

    /// Time grid implied by the config.
    pub fn grid(&self) -> Result<TimeGrid> {
        self.validate()?;
        let n_steps = ((self.horizon / self.dt - 1e-9).ceil() as usize).max(1);
        let dt = self.horizon / n_steps as f64;
        let mut steps: Vec<usize> = match &self.record {
            Record::All => (0..=n_steps).collect(),
            Record::Terminal => vec![0, n_steps],
            Record::Times(ts) => std::iter::once(0)
                .chain(ts.iter().map(|t| ((t / dt).round() as usize).min(n_steps)))
                .collect(),
        };
        steps.sort_unstable();
        steps.dedup();
        Ok(TimeGrid { dt, n_steps, observed: steps })
    }
}

/// Uniform grid with `n_steps` steps of length `dt` and the recorded indices.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    pub dt: f64,
    pub n_steps: usize,
    pub observed: Vec<usize>,
}

impl TimeGrid {
    pub fn times(&self) -> Vec<f64> {
        self.observed.iter().map(|&i| i as f64 * self.dt).collect()
    }

    /// Calls `record(slot)` whenever `step` is an observed index.
    #[inline]
    pub(crate) fn observe(&self, step: usize, next_slot: &mut usize, mut record: impl FnMut(usize)) {
        if *next_slot < self.observed.len() && self.observed[*next_slot] == step {
            record(*next_slot);
            *next_slot += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_snaps_and_always_keeps_zero() {
        let c = SimConfig::new(0.3, 1.0, 1, 0).with_record(Record::Times(vec![0.5, 1.0, 0.5]));
        let g = c.grid().unwrap();
        assert_eq!(g.n_steps, 4);
        assert_eq!(g.dt, 0.25);
        assert_eq!(g.observed, vec![0, 2, 4]);
        let c = SimConfig::new(1e-3, 1.0, 1, 0);
        assert_eq!(c.grid().unwrap().n_steps, 1000);
        let bad = SimConfig::new(0.1, 1.0, 1, 0).with_record(Record::Times(vec![1.5]));
        assert!(bad.grid().is_err());
    }
}
