use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use refcopula::simulators::{
    simulate_local_correlation, simulate_multibarrier, simulate_reflection_pair, Dependence, LocalCorrParams,
    PathBatch, ProductSpec, SimConfig, TwoFactorParams,
};
use refcopula::spread_analytics::{Cap, MultiBarrierParams};

use crate::error::{usage, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unbounded {
    Unbounded,
}

/// A reflection cap written as a count or as `"unbounded"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CapArg {
    Finite(u32),
    Unbounded(Unbounded),
}

impl Default for CapArg {
    fn default() -> Self {
        Self::Unbounded(Unbounded::Unbounded)
    }
}

impl CapArg {
    pub fn cap(self) -> Cap {
        match self {
            Self::Finite(n) => Cap::Finite(n),
            Self::Unbounded(_) => Cap::Unbounded,
        }
    }

    pub fn label(self) -> String {
        match self {
            Self::Finite(n) => format!("n{n}"),
            Self::Unbounded(_) => "limit".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DependenceArg {
    Constant { rho: f64 },
    Multibarrier {
        nu: f64,
        eta: f64,
        rho: f64,
        #[serde(default)]
        cap: CapArg,
    },
}

impl DependenceArg {
    pub fn resolve(&self) -> Result<Dependence> {
        Ok(match *self {
            Self::Constant { rho } => {
                if !(-1.0..=1.0).contains(&rho) {
                    return Err(CliError::Usage(format!("rho must lie in [-1, 1], got {rho}")));
                }
                Dependence::Constant { rho }
            }
            Self::Multibarrier { nu, eta, rho, cap } => Dependence::MultiBarrier {
                params: usage(MultiBarrierParams::new(nu, eta, rho))?,
                cap: cap.cap(),
            },
        })
    }
}

fn default_products() -> Vec<ProductSpec> {
    vec![ProductSpec::MonthAhead(3), ProductSpec::MonthAhead(6)]
}

/// Where (X, Y) samples come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum PathModel {
    Reflection {
        h: f64,
    },
    Multibarrier {
        nu: f64,
        eta: f64,
        rho: f64,
        #[serde(default)]
        cap: CapArg,
    },
    LocalCorr {
        nu: f64,
        eta: f64,
        rho1: f64,
        rho2: f64,
    },
    Commodity {
        #[serde(default)]
        params: TwoFactorParams,
        #[serde(default = "default_products")]
        products: Vec<ProductSpec>,
        dependence: DependenceArg,
    },
    /// Two-column `x,y` CSV file of samples.
    Samples {
        file: PathBuf,
    },
}

impl Default for PathModel {
    fn default() -> Self {
        Self::Multibarrier { nu: 0.0, eta: 0.5, rho: 0.9, cap: CapArg::default() }
    }
}

impl PathModel {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Reflection { .. } => "reflection",
            Self::Multibarrier { .. } => "multibarrier",
            Self::LocalCorr { .. } => "local_corr",
            Self::Commodity { .. } => "commodity",
            Self::Samples { .. } => "samples",
        }
    }

    /// Simulates one of the Brownian pair models.
    pub fn simulate_pair(&self, config: &SimConfig) -> Result<PathBatch> {
        usage(config.validate())?;
        match *self {
            Self::Reflection { h } => {
                if !(h > 0.0 && h.is_finite()) {
                    return Err(CliError::Usage(format!("barrier h must be positive, got {h}")));
                }
                Ok(simulate_reflection_pair(h, config)?)
            }
            Self::Multibarrier { nu, eta, rho, cap } => {
                let params = usage(MultiBarrierParams::new(nu, eta, rho))?;
                Ok(simulate_multibarrier(&params, cap.cap(), config)?)
            }
            Self::LocalCorr { nu, eta, rho1, rho2 } => {
                let params = usage(LocalCorrParams::new(nu, eta, rho1, rho2))?;
                Ok(simulate_local_correlation(&params, config)?)
            }
            Self::Commodity { .. } | Self::Samples { .. } => {
                Err(CliError::Usage(format!("model {} does not produce (X, Y) paths", self.name())))
            }
        }
    }
}
