//! Two-factor forward-curve model for electricity (E) and coal (G).
//!
//! Time is in years. Each commodity has an exponentially damped short-term
//! factor and a constant-volatility long-term factor; only the long-term
//! factors are dependent.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::batch::run_paths;
use super::config::SimConfig;
use super::multibarrier::MAX_REFLECTIONS;
use super::rng::{NormalStream, Stream};
use crate::error::{ensure, Error, Result};
use crate::spread_analytics::{Cap, MultiBarrierParams};

pub const DAYS_PER_YEAR: f64 = 365.0;
pub const MONTH: f64 = 1.0 / 12.0;
/// Midpoint cells used to average a one-month delivery period.
pub const DELIVERY_CELLS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorParams {
    pub sigma_s: f64,
    pub alpha_s: f64,
    pub sigma_l: f64,
}

impl FactorParams {
    /// Electricity, French forwards 2014.
    pub const ELECTRICITY: Self = Self { sigma_s: 0.972925, alpha_s: 17.0363, sigma_l: 0.102555 };
    /// Coal, French forwards 2014.
    pub const COAL: Self = Self { sigma_s: 0.112134, alpha_s: 2.07832, sigma_l: 0.092602 };

    fn validate(&self, name: &str) -> Result<()> {
        ensure(self.sigma_s >= 0.0 && self.sigma_l >= 0.0, || {
            format!("{name}: volatilities must be ≥ 0")
        })?;
        ensure(self.alpha_s > 0.0 && self.alpha_s.is_finite(), || {
            format!("{name}: alpha_s must be positive, got {}", self.alpha_s)
        })
    }

    /// Var(∫₀ᵗ e^{−α(t−s)} dB_s).
    fn ou_variance(&self, t: f64) -> f64 {
        -(-2.0 * self.alpha_s * t).exp_m1() / (2.0 * self.alpha_s)
    }
}

/// Initial forward curve T ↦ f(0, T).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForwardCurve {
    Flat(f64),
    /// (maturity in years, price) knots, linear in between, flat outside.
    Table(Vec<(f64, f64)>),
}

impl ForwardCurve {
    fn validate(&self, name: &str) -> Result<()> {
        match self {
            Self::Flat(f) => ensure(*f > 0.0 && f.is_finite(), || format!("{name}: curve level must be positive")),
            Self::Table(knots) => {
                ensure(!knots.is_empty(), || format!("{name}: curve table is empty"))?;
                ensure(knots.iter().all(|k| k.1 > 0.0 && k.1.is_finite()), || {
                    format!("{name}: curve prices must be positive")
                })?;
                ensure(knots.windows(2).all(|w| w[0].0 < w[1].0), || {
                    format!("{name}: curve maturities must be increasing")
                })
            }
        }
    }

    pub fn at(&self, maturity: f64) -> f64 {
        match self {
            Self::Flat(f) => *f,
            Self::Table(k) => {
                let i = k.partition_point(|p| p.0 <= maturity);
                if i == 0 {
                    k[0].1
                } else if i == k.len() {
                    k[i - 1].1
                } else {
                    let (a, b) = (k[i - 1], k[i]);
                    a.1 + (b.1 - a.1) * (maturity - a.0) / (b.0 - a.0)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoFactorParams {
    pub electricity: FactorParams,
    pub coal: FactorParams,
    pub heat_rate: f64,
    pub curve_e: ForwardCurve,
    pub curve_g: ForwardCurve,
}

impl Default for TwoFactorParams {
    /// Calibrated electricity/coal values with flat curves f^E = H·f^G = 100 and H = 1.
    fn default() -> Self {
        Self {
            electricity: FactorParams::ELECTRICITY,
            coal: FactorParams::COAL,
            heat_rate: 1.0,
            curve_e: ForwardCurve::Flat(100.0),
            curve_g: ForwardCurve::Flat(100.0),
        }
    }
}

impl TwoFactorParams {
    pub fn validate(&self) -> Result<()> {
        self.electricity.validate("electricity")?;
        self.coal.validate("coal")?;
        ensure(self.heat_rate > 0.0 && self.heat_rate.is_finite(), || {
            format!("heat rate must be positive, got {}", self.heat_rate)
        })?;
        self.curve_e.validate("electricity")?;
        self.curve_g.validate("coal")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductSpec {
    /// S_t = f(t, t).
    Spot,
    /// Delivery over one month starting n months after the observation time.
    MonthAhead(u32),
    /// Single-day delivery at a fixed maturity (years).
    Forward { maturity: f64 },
}

impl ProductSpec {
    pub fn label(&self) -> String {
        match self {
            Self::Spot => "spot".into(),
            Self::MonthAhead(n) => format!("{n}mah"),
            Self::Forward { maturity } => format!("forward_{maturity}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dependence {
    /// Long-term factors with constant correlation.
    Constant { rho: f64 },
    /// Long-term factors coupled by the multi-barrier model.
    MultiBarrier { params: MultiBarrierParams, cap: Cap },
}

/// Prices of one product, `n_paths × times.len()` row-major by path.
#[derive(Debug, Clone, PartialEq)]
pub struct CommodityBatch {
    pub product: ProductSpec,
    pub seed: u64,
    pub dt: f64,
    pub n_paths: usize,
    pub times: Vec<f64>,
    pub fe: Vec<f64>,
    pub fg: Vec<f64>,
    /// f^E − H·f^G.
    pub spread: Vec<f64>,
}

impl CommodityBatch {
    pub fn slot(&self, t: f64) -> usize {
        self.times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }

    fn column(&self, data: &[f64], slot: usize) -> Vec<f64> {
        let n = self.times.len();
        (0..self.n_paths).map(|p| data[p * n + slot]).collect()
    }

    pub fn fe_at(&self, slot: usize) -> Vec<f64> {
        self.column(&self.fe, slot)
    }

    pub fn fg_at(&self, slot: usize) -> Vec<f64> {
        self.column(&self.fg, slot)
    }

    pub fn spread_at(&self, slot: usize) -> Vec<f64> {
        self.column(&self.spread, slot)
    }

    /// Writes `path_id,t,fE,fG,spread` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "path_id,t,fE,fG,spread")?;
        let n = self.times.len();
        for p in 0..self.n_paths {
            for (s, t) in self.times.iter().enumerate() {
                let i = p * n + s;
                writeln!(
                    out,
                    "{p},{t:.16e},{:.16e},{:.16e},{:.16e}",
                    self.fe[i], self.fg[i], self.spread[i]
                )?;
            }
        }
        Ok(())
    }
}

/// f(t, u) given the short-term OU state z and long-term Brownian value l.
fn forward(f: &FactorParams, curve: &ForwardCurve, t: f64, u: f64, z: f64, l: f64) -> f64 {
    let damp = (-f.alpha_s * (u - t)).exp();
    let short = f.sigma_s * damp * z - 0.5 * f.sigma_s * f.sigma_s * damp * damp * f.ou_variance(t);
    let long = f.sigma_l * l - 0.5 * f.sigma_l * f.sigma_l * t;
    curve.at(u) * (short + long).exp()
}

fn product_price(p: &ProductSpec, f: &FactorParams, curve: &ForwardCurve, t: f64, z: f64, l: f64) -> f64 {
    match *p {
        ProductSpec::Spot => forward(f, curve, t, t, z, l),
        ProductSpec::Forward { maturity } => forward(f, curve, t, maturity, z, l),
        ProductSpec::MonthAhead(n) => {
            let start = t + n as f64 * MONTH;
            let h = MONTH / DELIVERY_CELLS as f64;
            (0..DELIVERY_CELLS)
                .map(|j| forward(f, curve, t, start + (j as f64 + 0.5) * h, z, l))
                .sum::<f64>()
                / DELIVERY_CELLS as f64
        }
    }
}

/// Simulates one product; see [`simulate_two_factor_products`].
pub fn simulate_two_factor(
    params: &TwoFactorParams,
    product: ProductSpec,
    dependence: &Dependence,
    config: &SimConfig,
) -> Result<CommodityBatch> {
    let mut out = simulate_two_factor_products(params, &[product], dependence, config)?;
    Ok(out.pop().expect("one batch per product"))
}

/// Simulates several products on the same factor paths.
///
/// Short-term factors are Ornstein–Uhlenbeck states stepped exactly; the
/// long-term factors follow `dependence`.
pub fn simulate_two_factor_products(
    params: &TwoFactorParams,
    products: &[ProductSpec],
    dependence: &Dependence,
    config: &SimConfig,
) -> Result<Vec<CommodityBatch>> {
    params.validate()?;
    let grid = config.grid()?;
    let last_obs = *grid.observed.last().unwrap() as f64 * grid.dt;
    for p in products {
        if let ProductSpec::Forward { maturity } = p {
            ensure(*maturity >= last_obs - 1e-12, || {
                format!("forward maturity {maturity} is before the last observation time {last_obs}")
            })?;
        }
    }
    match dependence {
        Dependence::Constant { rho } => ensure((-1.0..=1.0).contains(rho), || {
            format!("rho must lie in [-1, 1], got {rho}")
        })?,
        Dependence::MultiBarrier { params, .. } => params.validate()?,
    }
    let dt = grid.dt;
    let sd = dt.sqrt();
    let (fe, fg) = (params.electricity, params.coal);
    let ou = |f: &FactorParams| ((-f.alpha_s * dt).exp(), f.ou_variance(dt).sqrt());
    let (decay_e, vol_e) = ou(&fe);
    let (decay_g, vol_g) = ou(&fg);
    let n_obs = grid.observed.len();
    let np = products.len();

    let per_path = run_paths(config.n_paths, |p| {
        let mut zx = NormalStream::new(config.seed, Stream::X, p);
        let mut zy = NormalStream::new(config.seed, Stream::Y, p);
        let mut ze = NormalStream::new(config.seed, Stream::ShortE, p);
        let mut zg = NormalStream::new(config.seed, Stream::ShortG, p);
        // Per product: fe, fg at each observation.
        let mut out = vec![(Vec::with_capacity(n_obs), Vec::with_capacity(n_obs)); np];
        let (mut se, mut sg) = (0.0, 0.0);
        let (mut x, mut y) = (0.0, 0.0);
        let mut d = 0.0;
        let mut k = 0u64;
        let mut slot = 0;
        let mut record = |step: usize, se: f64, sg: f64, x: f64, y: f64| {
            let t = step as f64 * dt;
            for (prod, o) in products.iter().zip(out.iter_mut()) {
                o.0.push(product_price(prod, &fe, &params.curve_e, t, se, x));
                o.1.push(product_price(prod, &fg, &params.curve_g, t, sg, y));
            }
        };
        if grid.observed[0] == 0 {
            record(0, se, sg, x, y);
            slot = 1;
        }
        for step in 1..=grid.n_steps {
            let dx = sd * zx.next();
            let dw = sd * zy.next();
            se = decay_e * se + vol_e * ze.next();
            sg = decay_g * sg + vol_g * zg.next();
            x += dx;
            match *dependence {
                Dependence::Constant { rho } => {
                    y += rho * dx + (1.0 - rho * rho).max(0.0).sqrt() * dw;
                }
                Dependence::MultiBarrier { params: mb, cap } => {
                    let even = k % 2 == 0;
                    let s = if even { 1.0 + mb.rho } else { 1.0 - mb.rho };
                    d += s * dx - (1.0 - mb.rho * mb.rho).max(0.0).sqrt() * dw;
                    let crossed = if even { d >= mb.eta } else { d <= mb.nu };
                    if crossed && cap.allows(k) {
                        k += 1;
                        d = mb.alpha(k);
                        if k >= MAX_REFLECTIONS {
                            return Err(Error::Numerical {
                                routine: "simulate_two_factor",
                                detail: format!("path {p} hit the limit of {MAX_REFLECTIONS} reflections"),
                            });
                        }
                    }
                    y = x - d;
                }
            }
            if slot < n_obs && grid.observed[slot] == step {
                record(step, se, sg, x, y);
                slot += 1;
            }
        }
        Ok(out)
    })?;

    let times = grid.times();
    let mut batches: Vec<CommodityBatch> = products
        .iter()
        .map(|&product| CommodityBatch {
            product,
            seed: config.seed,
            dt,
            n_paths: config.n_paths,
            times: times.clone(),
            fe: Vec::with_capacity(config.n_paths * n_obs),
            fg: Vec::with_capacity(config.n_paths * n_obs),
            spread: Vec::with_capacity(config.n_paths * n_obs),
        })
        .collect();
    for path in per_path {
        for (b, (e, g)) in batches.iter_mut().zip(path) {
            b.spread.extend(e.iter().zip(&g).map(|(a, c)| a - params.heat_rate * c));
            b.fe.extend(e);
            b.fg.extend(g);
        }
    }
    Ok(batches)
}
