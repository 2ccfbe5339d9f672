use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use refcopula::simulators::{
    empirical_survival, simulate_local_correlation, simulate_multibarrier_caps, simulate_reflection_pair,
    LocalCorrParams, PathBatch, Record, SimConfig, SurvivalCurve,
};
use refcopula::spread_analytics::{
    exp_barrier_spread_survival, gaussian_spread_survival, mb_survival, mb_survival_limit,
    reflection_spread_survival, MultiBarrierParams,
};

use super::{positive, Command};
use crate::error::{usage, CliError, Result};
use crate::flags::{Flags, Mode};
use crate::models::CapArg;
use crate::output::OutDir;

const LIMIT_TOL: f64 = 1e-10;

/// Dependence model whose spread X_t − Y_t is studied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpreadModel {
    Gaussian { rho: f64 },
    Reflection { h: f64 },
    ExpBarrier { h: f64, lambda: f64 },
    Multibarrier { nu: f64, eta: f64, rho: f64, caps: Vec<CapArg> },
    LocalCorr { nu: f64, eta: f64, rho1: f64, rho2: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XGrid {
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

impl XGrid {
    fn values(&self) -> Result<Vec<f64>> {
        if !(self.from.is_finite() && self.to.is_finite() && self.from <= self.to && self.points >= 1) {
            return Err(CliError::Usage(format!("bad x grid {self:?}")));
        }
        if self.points == 1 {
            return Ok(vec![self.from]);
        }
        let last = (self.points - 1) as f64;
        Ok((0..self.points).map(|i| self.from + (self.to - self.from) * i as f64 / last).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SurvivalConfig {
    pub model: SpreadModel,
    pub t: f64,
    pub x: XGrid,
    pub mode: Mode,
    pub paths: usize,
    pub dt: f64,
    pub seed: u64,
    pub confidence: f64,
}

impl Default for SurvivalConfig {
    fn default() -> Self {
        Self {
            model: SpreadModel::Multibarrier {
                nu: 0.0,
                eta: 0.5,
                rho: 0.9,
                caps: [0, 1, 5, 10, 50].into_iter().map(CapArg::Finite).collect(),
            },
            t: 1.0,
            x: XGrid { from: -1.0, to: 2.0, points: 121 },
            mode: Mode::Analytic,
            paths: 10_000,
            dt: 1e-3,
            seed: 0,
            confidence: 0.99,
        }
    }
}

/// One curve, with its analytic and/or simulated values.
struct Curve {
    label: Option<String>,
    analytic: Option<Vec<f64>>,
    mc: Option<SurvivalCurve>,
}

fn unsupported(model: &str, mode: &str) -> CliError {
    CliError::Usage(format!("model {model} has no {mode} survival"))
}

impl SurvivalConfig {
    fn wants(&self, mode: Mode) -> bool {
        self.mode == mode || self.mode == Mode::Both
    }

    fn sim_config(&self) -> Result<SimConfig> {
        let c = SimConfig::new(self.dt, self.t, self.paths, self.seed).with_record(Record::Terminal);
        usage(c.validate())?;
        Ok(c)
    }

    fn spreads(batch: &PathBatch) -> Vec<f64> {
        batch.spread_at(batch.n_obs() - 1)
    }

    /// One analytic curve per label.
    fn analytic(&self, xs: &[f64]) -> Result<Vec<Vec<f64>>> {
        let t = self.t;
        let eval = |f: &dyn Fn(f64) -> refcopula::Result<f64>| -> Result<Vec<f64>> {
            xs.iter().map(|&x| usage(f(x))).collect()
        };
        Ok(match &self.model {
            SpreadModel::Gaussian { rho } => vec![eval(&|x| gaussian_spread_survival(x, t, *rho))?],
            SpreadModel::Reflection { h } => vec![eval(&|x| reflection_spread_survival(x, t, *h))?],
            SpreadModel::ExpBarrier { h, lambda } => vec![eval(&|x| exp_barrier_spread_survival(x, t, *h, *lambda))?],
            SpreadModel::Multibarrier { nu, eta, rho, caps } => {
                let p = usage(MultiBarrierParams::new(*nu, *eta, *rho))?;
                let mut curves = Vec::with_capacity(caps.len());
                for cap in caps {
                    curves.push(match *cap {
                        CapArg::Finite(n) => eval(&|x| mb_survival(n as u64, t, x, &p))?,
                        CapArg::Unbounded(_) => eval(&|x| mb_survival_limit(t, x, &p, LIMIT_TOL))?,
                    });
                }
                curves
            }
            SpreadModel::LocalCorr { .. } => return Err(unsupported("local_corr", "analytic")),
        })
    }

    fn monte_carlo(&self, xs: &[f64]) -> Result<Vec<SurvivalCurve>> {
        let cfg = self.sim_config()?;
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(CliError::Usage(format!("confidence must lie in (0, 1), got {}", self.confidence)));
        }
        let batches = match &self.model {
            SpreadModel::Gaussian { rho } => {
                let params = usage(LocalCorrParams::new(0.0, 1.0, *rho, *rho))?;
                vec![simulate_local_correlation(&params, &cfg)?]
            }
            SpreadModel::Reflection { h } => {
                positive("h", *h)?;
                vec![simulate_reflection_pair(*h, &cfg)?]
            }
            SpreadModel::ExpBarrier { .. } => return Err(unsupported("exp_barrier", "Monte Carlo")),
            SpreadModel::Multibarrier { nu, eta, rho, caps } => {
                let p = usage(MultiBarrierParams::new(*nu, *eta, *rho))?;
                let caps: Vec<_> = caps.iter().map(|c| c.cap()).collect();
                simulate_multibarrier_caps(&p, &caps, &cfg)?
            }
            SpreadModel::LocalCorr { nu, eta, rho1, rho2 } => {
                let params = usage(LocalCorrParams::new(*nu, *eta, *rho1, *rho2))?;
                vec![simulate_local_correlation(&params, &cfg)?]
            }
        };
        batches
            .iter()
            .map(|b| Ok(empirical_survival(&Self::spreads(b), xs, self.confidence)?))
            .collect()
    }

    fn labels(&self) -> Vec<Option<String>> {
        match &self.model {
            SpreadModel::Multibarrier { caps, .. } => caps.iter().map(|c| Some(c.label())).collect(),
            _ => vec![None],
        }
    }
}

fn write_joined<W: Write>(w: &mut W, xs: &[f64], analytic: &[f64], mc: &SurvivalCurve) -> io::Result<()> {
    let (c, band) = mc.band.as_ref().expect("empirical curves carry a band");
    let pct = (c * 100.0).round() as u32;
    writeln!(w, "x,p_analytic,p_mc,lo{pct},hi{pct}")?;
    for (i, x) in xs.iter().enumerate() {
        let (lo, hi) = band[i];
        writeln!(w, "{x:.16e},{:.16e},{:.16e},{lo:.16e},{hi:.16e}", analytic[i], mc.p[i])?;
    }
    Ok(())
}

impl Command for SurvivalConfig {
    const NAME: &'static str = "survival";

    fn apply(&mut self, flags: &Flags) -> Result<()> {
        flags.reject(Self::NAME, &["resolution"])?;
        if let Some(v) = flags.seed {
            self.seed = v;
        }
        if let Some(v) = flags.paths {
            self.paths = v;
        }
        if let Some(v) = flags.dt {
            self.dt = v;
        }
        if let Some(v) = flags.mode {
            self.mode = v;
        }
        Ok(())
    }

    fn seed(&self) -> Option<u64> {
        (self.mode != Mode::Analytic).then_some(self.seed)
    }

    fn run(&self, out: &mut OutDir) -> Result<()> {
        positive("t", self.t)?;
        if let SpreadModel::Multibarrier { caps, .. } = &self.model {
            if caps.is_empty() {
                return Err(CliError::Usage("multibarrier survival needs at least one cap".into()));
            }
        }
        let xs = self.x.values()?;
        let analytic = if self.wants(Mode::Analytic) { Some(self.analytic(&xs)?) } else { None };
        let mc = if self.wants(Mode::Mc) { Some(self.monte_carlo(&xs)?) } else { None };
        let mut analytic = analytic.map(|v| v.into_iter());
        let mut mc = mc.map(|v| v.into_iter());
        let curves: Vec<Curve> = self
            .labels()
            .into_iter()
            .map(|label| Curve {
                label,
                analytic: analytic.as_mut().and_then(|a| a.next()),
                mc: mc.as_mut().and_then(|m| m.next()),
            })
            .collect();
        for curve in &curves {
            let name = match &curve.label {
                Some(l) => format!("survival_{l}.csv"),
                None => "survival.csv".into(),
            };
            match (&curve.analytic, &curve.mc) {
                (Some(p), Some(m)) => out.write(&name, |w| write_joined(w, &xs, p, m))?,
                (Some(p), None) => out.write(&name, |w| SurvivalCurve::analytic(xs.clone(), p.clone()).write_csv(w))?,
                (None, Some(m)) => out.write(&name, |w| m.write_csv(w))?,
                (None, None) => unreachable!("mode selects at least one curve"),
            }
        }
        Ok(())
    }
}
