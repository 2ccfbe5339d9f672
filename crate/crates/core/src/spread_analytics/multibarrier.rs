//! The multi-barrier correlation model: reflection levels, hitting laws and
//! the survival recursion for X_t − Y^n_t.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::math_kernels::{cdf, pdf};

/// Barriers ν < η (η > 0) and base correlation ρ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiBarrierParams {
    pub nu: f64,
    pub eta: f64,
    pub rho: f64,
}

/// Maximum number of reflections a path may perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cap {
    Finite(u32),
    Unbounded,
}

impl Cap {
    pub fn allows(self, k: u64) -> bool {
        match self {
            Cap::Finite(n) => k < n as u64,
            Cap::Unbounded => true,
        }
    }
}

impl MultiBarrierParams {
    pub fn new(nu: f64, eta: f64, rho: f64) -> Result<Self> {
        let p = Self { nu, eta, rho };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.eta > 0.0 && self.eta.is_finite(), || {
            format!("eta must be positive, got {}", self.eta)
        })?;
        ensure(self.nu < self.eta && self.nu.is_finite(), || {
            format!("need nu < eta, got nu = {}, eta = {}", self.nu, self.eta)
        })?;
        ensure((-1.0..=1.0).contains(&self.rho), || {
            format!("rho must lie in [-1, 1], got {}", self.rho)
        })
    }

    /// Level α_k that the spread is snapped to at the k-th reflection.
    #[inline]
    pub fn alpha(&self, k: u64) -> f64 {
        match k {
            0 => 0.0,
            k if k % 2 == 1 => self.eta,
            _ => self.nu,
        }
    }

    /// Smallest gap u_{k+1} − u_k for k ≥ 1.
    fn min_gap(&self) -> f64 {
        (self.eta - self.nu) / (2.0 * (1.0 + self.rho.abs())).sqrt()
    }
}

/// u_k: τ_k has the law of the first time a standard Brownian motion hits u_k.
///
/// Returns +∞ where the formula divides by zero (ρ = −1 for k ≥ 1, ρ = 1 for
/// k ≥ 2), meaning the k-th reflection never happens.
pub fn mb_barrier_sequence(k: u64, params: &MultiBarrierParams) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let MultiBarrierParams { nu, eta, rho } = *params;
    let first = eta / (2.0 * (1.0 + rho)).sqrt();
    if k == 1 {
        return if rho <= -1.0 { f64::INFINITY } else { first };
    }
    if rho.abs() >= 1.0 {
        return f64::INFINITY;
    }
    let even = (k / 2) as f64 / (1.0 - rho).sqrt();
    let odd = ((k - 1) / 2) as f64 / (1.0 + rho).sqrt();
    first + (eta - nu) / std::f64::consts::SQRT_2 * (even + odd)
}

/// P(τ_k ≤ t) = 2Φ(−u_k/√t).
pub fn mb_hit_time_cdf(k: u64, t: f64, params: &MultiBarrierParams) -> Result<f64> {
    params.validate()?;
    ensure(k >= 1, || "reflection index must be ≥ 1".into())?;
    ensure(t > 0.0, || format!("t must be positive, got {t}"))?;
    Ok(2.0 * cdf(-mb_barrier_sequence(k, params) / t.sqrt()))
}

fn check_open(params: &MultiBarrierParams, t: f64) -> Result<()> {
    params.validate()?;
    ensure(t > 0.0 && t.is_finite(), || format!("t must be positive, got {t}"))?;
    ensure(params.rho.abs() < 1.0, || {
        format!("recursion needs |rho| < 1, got {}; use mb_survival_limit", params.rho)
    })
}

/// p_0(t, x) = P(X_t − Y^0_t ≥ x).
fn p0(t: f64, x: f64, rho: f64) -> f64 {
    cdf(-x / (2.0 * (1.0 + rho) * t).sqrt())
}

/// a_k = p_k − p_{k−1} for k ≥ 1.
fn increment(k: u64, t: f64, x: f64, params: &MultiBarrierParams) -> f64 {
    let rho = params.rho;
    let alpha = params.alpha(k);
    let shift = mb_barrier_sequence(k, params) / t.sqrt();
    // Regime k−1 runs with 1 + (−1)^{k−1}ρ, regime k with 1 + (−1)^k ρ.
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let s_prev = (2.0 * (1.0 + sign * rho) * t).sqrt();
    let s_next = (2.0 * (1.0 - sign * rho) * t).sqrt();
    let d = x - alpha;
    if x < alpha {
        cdf(d / s_prev - shift) - cdf(d / s_next - shift)
    } else {
        cdf(d / s_prev + shift) - cdf(d / s_next + shift)
    }
}

/// p_0, …, p_n at (t, x).
pub fn mb_survival_sequence(n: u64, t: f64, x: f64, params: &MultiBarrierParams) -> Result<Vec<f64>> {
    check_open(params, t)?;
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut p = p0(t, x, params.rho);
    out.push(p);
    for k in 1..=n {
        p += increment(k, t, x, params);
        out.push(p);
    }
    Ok(out)
}

/// p_n(t, x) = P(X_t − Y^n_t ≥ x) with at most n reflections.
pub fn mb_survival(n: u64, t: f64, x: f64, params: &MultiBarrierParams) -> Result<f64> {
    check_open(params, t)?;
    let mut p = p0(t, x, params.rho);
    for k in 1..=n {
        p += increment(k, t, x, params);
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesLimit {
    pub value: f64,
    /// Number of increments a_k summed.
    pub terms: u64,
    /// Bound on the neglected tail Σ_{k>terms} |a_k|.
    pub tail_bound: f64,
}

const MAX_TERMS: u64 = 10_000_000;

/// Bound on Σ_{k>K} |a_k| using |a_k| ≤ Φ(−u_k/√t) and u_{k+1} − u_k ≥ gap.
fn tail_bound(next_u: f64, gap: f64, t: f64) -> f64 {
    let st = t.sqrt();
    let a = next_u / st;
    let delta = gap / st;
    cdf(-a) + (pdf(a) - a * cdf(-a)).max(0.0) / delta
}

/// lim_n p_n(t, x), i.e. P(X_t − Y^{N_t}_t ≥ x), to within `tol`.
pub fn mb_survival_limit_detail(t: f64, x: f64, params: &MultiBarrierParams, tol: f64) -> Result<SeriesLimit> {
    params.validate()?;
    ensure(t > 0.0 && t.is_finite(), || format!("t must be positive, got {t}"))?;
    ensure(tol > 0.0, || format!("tol must be positive, got {tol}"))?;
    let st = t.sqrt();
    if params.rho <= -1.0 {
        let value = if x <= 0.0 { 1.0 } else { 0.0 };
        return Ok(SeriesLimit { value, terms: 0, tail_bound: 0.0 });
    }
    if params.rho >= 1.0 {
        let value = if x <= params.eta {
            cdf(-x / (2.0 * st)) + cdf((x - 2.0 * params.eta) / (2.0 * st))
        } else {
            0.0
        };
        return Ok(SeriesLimit { value, terms: 0, tail_bound: 0.0 });
    }
    let gap = params.min_gap();
    let mut value = p0(t, x, params.rho);
    let mut k = 0;
    loop {
        let bound = tail_bound(mb_barrier_sequence(k + 1, params), gap, t);
        if bound < tol {
            return Ok(SeriesLimit { value: value.clamp(0.0, 1.0), terms: k, tail_bound: bound });
        }
        if k >= MAX_TERMS {
            return Err(Error::Numerical {
                routine: "mb_survival_limit",
                detail: format!("tail bound {bound:.3e} still above {tol:.1e} after {k} terms"),
            });
        }
        k += 1;
        value += increment(k, t, x, params);
    }
}

/// Value of [`mb_survival_limit_detail`].
pub fn mb_survival_limit(t: f64, x: f64, params: &MultiBarrierParams, tol: f64) -> Result<f64> {
    mb_survival_limit_detail(t, x, params, tol).map(|s| s.value)
}
