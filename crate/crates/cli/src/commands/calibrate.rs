use serde::{Deserialize, Serialize};

use refcopula::spread_analytics::{calibrate_rho, MultiBarrierParams};

use super::{positive, Command};
use crate::error::{usage, CliError, Result};
use crate::flags::Flags;
use crate::output::OutDir;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CalibrateConfig {
    /// Survival P(X_t − Y_t ≥ z) to reach.
    pub target: Option<f64>,
    pub z: f64,
    pub nu: f64,
    pub eta: f64,
    pub t: f64,
    pub tol: f64,
}

impl Default for CalibrateConfig {
    fn default() -> Self {
        Self { target: None, z: 0.25, nu: 0.0, eta: 0.5, t: 1.0, tol: 1e-8 }
    }
}

impl Command for CalibrateConfig {
    const NAME: &'static str = "calibrate";

    fn apply(&mut self, flags: &Flags) -> Result<()> {
        flags.reject(Self::NAME, &["seed", "paths", "dt", "resolution", "mode"])
    }

    fn seed(&self) -> Option<u64> {
        None
    }

    fn run(&self, out: &mut OutDir) -> Result<()> {
        let target = self.target.ok_or_else(|| CliError::Usage("calibrate needs a target".into()))?;
        usage(MultiBarrierParams::new(self.nu, self.eta, 0.0))?;
        positive("t", self.t)?;
        positive("tol", self.tol)?;
        if !(self.z > 0.0 && self.z < self.eta) {
            return Err(CliError::Usage(format!("need 0 < z < eta, got z = {}, eta = {}", self.z, self.eta)));
        }
        let cal = calibrate_rho(target, self.z, self.nu, self.eta, self.t, self.tol)?;
        println!("{}", serde_json::to_string(&cal).expect("calibration serialises"));
        out.write_json("calibration.json", &cal)
    }
}
