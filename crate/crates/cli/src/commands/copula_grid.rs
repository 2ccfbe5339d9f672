use std::sync::Arc;

use serde::{Deserialize, Serialize};

use refcopula::copulae::{check_grid, CopulaSpec, CopulaSurfaceGrid};

use super::Command;
use crate::error::{usage, CliError, Result};
use crate::flags::Flags;
use crate::output::OutDir;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum CopulaArg {
    Gaussian { rho: f64 },
    Reflection { t: f64, h: f64 },
    CorrelatedReflection { t: f64, h: f64, rho: f64 },
    ExpBarrier { t: f64, h: f64, lambda: f64 },
    /// Reflection at a barrier drawn uniformly from [lo, hi].
    UniformBarrier { t: f64, lo: f64, hi: f64 },
    Patchwork { eta: f64, rho: f64 },
    FrechetUpper,
    FrechetLower,
    Independence,
}

impl CopulaArg {
    pub fn spec(&self) -> Result<CopulaSpec> {
        let spec = match *self {
            Self::Gaussian { rho } => CopulaSpec::Gaussian { rho },
            Self::Reflection { t, h } => CopulaSpec::Reflection { t, h },
            Self::CorrelatedReflection { t, h, rho } => CopulaSpec::CorrelatedReflection { t, h, rho },
            Self::ExpBarrier { t, h, lambda } => CopulaSpec::ExpBarrier { t, h, lambda },
            Self::UniformBarrier { t, lo, hi } => {
                if !(lo >= 0.0 && lo < hi && hi.is_finite()) {
                    return Err(CliError::Usage(format!("need 0 ≤ lo < hi, got lo = {lo}, hi = {hi}")));
                }
                let survival = Arc::new(move |s: f64| ((hi - s) / (hi - lo)).clamp(0.0, 1.0));
                CopulaSpec::RandomBarrier { t, survival }
            }
            Self::Patchwork { eta, rho } => CopulaSpec::Patchwork { eta, rho },
            Self::FrechetUpper => CopulaSpec::FrechetUpper,
            Self::FrechetLower => CopulaSpec::FrechetLower,
            Self::Independence => CopulaSpec::Independence,
        };
        usage(spec.validate())?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CopulaGridConfig {
    pub copula: CopulaArg,
    pub resolution: usize,
}

impl Default for CopulaGridConfig {
    fn default() -> Self {
        Self { copula: CopulaArg::Reflection { t: 1.0, h: 2.0 }, resolution: 100 }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    family: &'static str,
    #[serde(flatten)]
    axioms: &'a refcopula::copulae::AxiomReport,
}

impl Command for CopulaGridConfig {
    const NAME: &'static str = "copula-grid";

    fn apply(&mut self, flags: &Flags) -> Result<()> {
        flags.reject(Self::NAME, &["seed", "paths", "dt", "mode"])?;
        if let Some(r) = flags.resolution {
            self.resolution = r;
        }
        Ok(())
    }

    fn seed(&self) -> Option<u64> {
        None
    }

    fn run(&self, out: &mut OutDir) -> Result<()> {
        let spec = self.copula.spec()?;
        if self.resolution < 2 {
            return Err(CliError::Usage(format!("resolution must be ≥ 2, got {}", self.resolution)));
        }
        let grid = CopulaSurfaceGrid::from_spec(&spec, self.resolution)?;
        let axioms = check_grid(&grid);
        out.write("copula.csv", |w| grid.write_csv(w, "C"))?;
        out.write_json("copula_axioms.json", &Report { family: spec.family(), axioms: &axioms })
    }
}

