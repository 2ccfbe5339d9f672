use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use refcopula::copulae::empirical_copula;
use refcopula::simulators::{Record, SimConfig};

use super::Command;
use crate::error::{usage, CliError, Result};
use crate::flags::Flags;
use crate::models::PathModel;
use crate::output::OutDir;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmpiricalConfig {
    pub model: PathModel,
    /// Sampling time; the simulation runs up to it.
    pub t: f64,
    pub dt: f64,
    pub paths: usize,
    pub seed: u64,
    pub resolution: usize,
}

impl Default for EmpiricalConfig {
    fn default() -> Self {
        Self { model: PathModel::default(), t: 20.0, dt: 1e-3, paths: 1000, seed: 0, resolution: 50 }
    }
}

/// Reads `x,y` rows; a non-numeric first line is taken as a header.
fn read_samples(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed = match fields.as_slice() {
            [x, y] => x.parse::<f64>().ok().zip(y.parse::<f64>().ok()),
            _ => None,
        };
        match parsed {
            Some(pair) => out.push(pair),
            None if i == 0 => continue,
            None => {
                return Err(CliError::Usage(format!(
                    "{}: line {} is not an `x,y` pair of numbers",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(out)
}

impl Command for EmpiricalConfig {
    const NAME: &'static str = "empirical-copula";

    fn apply(&mut self, flags: &Flags) -> Result<()> {
        flags.reject(Self::NAME, &["mode"])?;
        if let Some(v) = flags.seed {
            self.seed = v;
        }
        if let Some(v) = flags.paths {
            self.paths = v;
        }
        if let Some(v) = flags.dt {
            self.dt = v;
        }
        if let Some(v) = flags.resolution {
            self.resolution = v;
        }
        Ok(())
    }

    fn seed(&self) -> Option<u64> {
        match self.model {
            PathModel::Samples { .. } => None,
            _ => Some(self.seed),
        }
    }

    fn run(&self, out: &mut OutDir) -> Result<()> {
        let samples = match &self.model {
            PathModel::Samples { file } => read_samples(file)?,
            PathModel::Commodity { .. } => {
                return Err(CliError::Usage("empirical-copula needs an (X, Y) model, not commodity".into()))
            }
            model => {
                let config = SimConfig::new(self.dt, self.t, self.paths, self.seed).with_record(Record::Terminal);
                let batch = model.simulate_pair(&config)?;
                batch.pairs_at(batch.n_obs() - 1)
            }
        };
        let grid = usage(empirical_copula(&samples, self.resolution))?;
        out.write("empirical_copula.csv", |w| grid.write_csv(w, "C_emp"))
    }
}
