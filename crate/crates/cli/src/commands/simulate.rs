use serde::{Deserialize, Serialize};

use refcopula::simulators::{simulate_two_factor_products, Record, SimConfig};

use super::Command;
use crate::error::{usage, CliError, Result};
use crate::flags::Flags;
use crate::models::PathModel;
use crate::output::OutDir;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    pub model: PathModel,
    pub horizon: f64,
    pub dt: f64,
    pub paths: usize,
    pub seed: u64,
    pub record: Record,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self {
            model: PathModel::default(),
            horizon: 20.0,
            dt: 1e-3,
            paths: 50,
            seed: 0,
            record: Record::All,
        }
    }
}

impl Command for SimulateConfig {
    const NAME: &'static str = "simulate";

    fn apply(&mut self, flags: &Flags) -> Result<()> {
        flags.reject(Self::NAME, &["resolution", "mode"])?;
        if let Some(v) = flags.seed {
            self.seed = v;
        }
        if let Some(v) = flags.paths {
            self.paths = v;
        }
        if let Some(v) = flags.dt {
            self.dt = v;
        }
        Ok(())
    }

    fn seed(&self) -> Option<u64> {
        Some(self.seed)
    }

    fn run(&self, out: &mut OutDir) -> Result<()> {
        let config = SimConfig::new(self.dt, self.horizon, self.paths, self.seed).with_record(self.record.clone());
        usage(config.validate())?;
        match &self.model {
            PathModel::Commodity { params, products, dependence } => {
                if products.is_empty() {
                    return Err(CliError::Usage("commodity simulation needs at least one product".into()));
                }
                usage(params.validate())?;
                let dependence = dependence.resolve()?;
                let batches = usage(simulate_two_factor_products(params, products, &dependence, &config))?;
                for b in &batches {
                    out.write(&format!("commodity_{}.csv", b.product.label()), |w| b.write_csv(w))?;
                }
                Ok(())
            }
            PathModel::Samples { .. } => Err(CliError::Usage("simulate cannot use a samples file".into())),
            model => {
                let batch = model.simulate_pair(&config)?;
                out.write("paths.csv", |w| batch.write_csv(w))
            }
        }
    }
}
