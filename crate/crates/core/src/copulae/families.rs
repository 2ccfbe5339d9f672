//! Closed-form copula families.

use std::fmt;
use std::sync::Arc;

use crate::error::{ensure, Error, Result};
use crate::math_kernels::quadrature::integrate_pieces;
use crate::math_kernels::{
    bvn_cdf, cdf, frechet_lower, frechet_upper, pdf, pdf_times_mills, quantile,
};

/// Survival function s ↦ P(ξ > s) of a random barrier.
pub type SurvivalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Survival function of ξ = h + Exp(λ).
pub fn exponential_survival(h: f64, lambda: f64) -> SurvivalFn {
    Arc::new(move |s| if s <= h { 1.0 } else { (-lambda * (s - h)).exp() })
}

#[derive(Clone)]
pub enum CopulaSpec {
    Gaussian { rho: f64 },
    Reflection { t: f64, h: f64 },
    CorrelatedReflection { t: f64, h: f64, rho: f64 },
    ExpBarrier { t: f64, h: f64, lambda: f64 },
    RandomBarrier { t: f64, survival: SurvivalFn },
    Patchwork { eta: f64, rho: f64 },
    FrechetUpper,
    FrechetLower,
    Independence,
}

impl fmt::Debug for CopulaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gaussian { rho } => write!(f, "Gaussian {{ rho: {rho} }}"),
            Self::Reflection { t, h } => write!(f, "Reflection {{ t: {t}, h: {h} }}"),
            Self::CorrelatedReflection { t, h, rho } => {
                write!(f, "CorrelatedReflection {{ t: {t}, h: {h}, rho: {rho} }}")
            }
            Self::ExpBarrier { t, h, lambda } => {
                write!(f, "ExpBarrier {{ t: {t}, h: {h}, lambda: {lambda} }}")
            }
            Self::RandomBarrier { t, .. } => write!(f, "RandomBarrier {{ t: {t}, survival: <fn> }}"),
            Self::Patchwork { eta, rho } => write!(f, "Patchwork {{ eta: {eta}, rho: {rho} }}"),
            Self::FrechetUpper => f.write_str("FrechetUpper"),
            Self::FrechetLower => f.write_str("FrechetLower"),
            Self::Independence => f.write_str("Independence"),
        }
    }
}

fn check_t(t: f64) -> Result<()> {
    ensure(t > 0.0 && t.is_finite(), || format!("t must be positive, got {t}"))
}

fn check_rho(rho: f64) -> Result<()> {
    ensure((-1.0..=1.0).contains(&rho), || format!("rho must lie in [-1, 1], got {rho}"))
}

impl CopulaSpec {
    pub fn family(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::Reflection { .. } => "reflection",
            Self::CorrelatedReflection { .. } => "correlated_reflection",
            Self::ExpBarrier { .. } => "exp_barrier",
            Self::RandomBarrier { .. } => "random_barrier",
            Self::Patchwork { .. } => "patchwork",
            Self::FrechetUpper => "frechet_upper",
            Self::FrechetLower => "frechet_lower",
            Self::Independence => "independence",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Gaussian { rho } => check_rho(rho),
            Self::Reflection { t, h } => {
                check_t(t)?;
                ensure(h > 0.0 && h.is_finite(), || format!("h must be positive, got {h}"))
            }
            Self::CorrelatedReflection { t, h, rho } => {
                check_t(t)?;
                ensure(h > 0.0 && h.is_finite(), || format!("h must be positive, got {h}"))?;
                ensure(rho > 0.0 && rho < 1.0, || {
                    format!("correlated reflection needs rho in (0, 1), got {rho}")
                })
            }
            Self::ExpBarrier { t, h, lambda } => {
                check_t(t)?;
                ensure(h.is_finite(), || format!("h must be finite, got {h}"))?;
                ensure(lambda > 0.0 && lambda.is_finite(), || {
                    format!("lambda must be positive, got {lambda}")
                })
            }
            Self::RandomBarrier { t, .. } => check_t(t),
            Self::Patchwork { eta, rho } => {
                ensure(eta > 0.0 && eta.is_finite(), || format!("eta must be positive, got {eta}"))?;
                check_rho(rho)
            }
            Self::FrechetUpper | Self::FrechetLower | Self::Independence => Ok(()),
        }
    }

    /// C(u, v), validating parameters first.
    pub fn eval(&self, u: f64, v: f64) -> Result<f64> {
        self.validate()?;
        ensure((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v), || {
            format!("copula arguments must lie in [0, 1], got ({u}, {v})")
        })?;
        self.eval_valid(u, v)
    }

    /// C(u, v) for parameters already validated and (u, v) in the unit square.
    pub fn eval_valid(&self, u: f64, v: f64) -> Result<f64> {
        Ok(match *self {
            Self::Gaussian { rho } => gaussian(u, v, rho),
            Self::Reflection { t, h } => reflection(u, v, t, h),
            Self::CorrelatedReflection { t, h, rho } => correlated_reflection(u, v, t, h, rho),
            Self::ExpBarrier { t, h, lambda } => exp_barrier(u, v, t, h, lambda),
            Self::RandomBarrier { t, ref survival } => return random_barrier(u, v, t, survival.as_ref()),
            Self::Patchwork { eta, rho } => patchwork(u, v, eta, rho),
            Self::FrechetUpper => frechet_upper(u, v),
            Self::FrechetLower => frechet_lower(u, v),
            Self::Independence => u * v,
        })
    }
}

/// Values on the boundary of the unit square, common to every copula.
#[inline]
fn boundary(u: f64, v: f64) -> Option<f64> {
    if u <= 0.0 || v <= 0.0 {
        Some(0.0)
    } else if u >= 1.0 {
        Some(v)
    } else if v >= 1.0 {
        Some(u)
    } else {
        None
    }
}

/// Gaussian copula Φ_ρ(Φ⁻¹(u), Φ⁻¹(v)).
pub fn gaussian(u: f64, v: f64, rho: f64) -> f64 {
    if let Some(c) = boundary(u, v) {
        return c;
    }
    if rho >= 1.0 {
        return frechet_upper(u, v);
    }
    if rho <= -1.0 {
        return frechet_lower(u, v);
    }
    if rho == 0.0 {
        return u * v;
    }
    bvn_cdf(quantile(u), quantile(v), rho)
}

/// Copula of a Brownian motion and its reflection at level h, at time t.
pub fn reflection(u: f64, v: f64, t: f64, h: f64) -> f64 {
    if let Some(c) = boundary(u, v) {
        return c;
    }
    let k = 2.0 * h / t.sqrt();
    if quantile(u) - quantile(v) >= k {
        return v;
    }
    let c = frechet_lower(u, v) + cdf(quantile(frechet_upper(u, 1.0 - v)) - k);
    c.min(frechet_upper(u, v))
}

/// Copula of B and ρ·B̃^h + √(1−ρ²)·Z for ρ in (0, 1).
pub fn correlated_reflection(u: f64, v: f64, t: f64, h: f64, rho: f64) -> f64 {
    if let Some(c) = boundary(u, v) {
        return c;
    }
    let st = t.sqrt();
    let k = 2.0 * h / st;
    let a = quantile(u);
    let b = quantile(v);
    let c = if u >= cdf(h / st) {
        let y = b + rho * k;
        bvn_cdf(a, y, rho) + v - cdf(y)
    } else {
        let x = a - k;
        bvn_cdf(a, b, -rho) + bvn_cdf(x, -b - rho * k, rho) + bvn_cdf(x, b, rho) - cdf(x)
    };
    c.clamp(frechet_lower(u, v), frechet_upper(u, v))
}

/// Copula generated by the random barrier ξ = h + Exp(λ).
pub fn exp_barrier(u: f64, v: f64, t: f64, h: f64, lambda: f64) -> f64 {
    if let Some(c) = boundary(u, v) {
        return c;
    }
    let st = t.sqrt();
    let m1 = frechet_upper(1.0 - u, v);
    let a = quantile(m1);
    let b = quantile(frechet_upper(u, 1.0 - v));
    let c = b - 2.0 * h / st;
    let k = 0.5 * lambda * st;
    let m = a.min(c);
    // Φ(m − k)·e^{λh − kb + k²/2} rearranged so no factor overflows.
    let tail = pdf_times_mills(m, k - m) * (lambda * h + k * (m - b)).exp();
    let value = frechet_lower(u, v) + cdf(c).min(m1) - tail;
    value.clamp(frechet_lower(u, v), frechet_upper(u, v))
}

/// Copula generated by a random barrier with survival function `survival`.
pub fn random_barrier(u: f64, v: f64, t: f64, survival: &(dyn Fn(f64) -> f64 + Send + Sync)) -> Result<f64> {
    if let Some(c) = boundary(u, v) {
        return Ok(c);
    }
    const LOWER: f64 = -8.5;
    const START_PANELS: usize = 16;
    let a = quantile(frechet_upper(1.0 - u, v));
    if a <= LOWER {
        return Ok(v);
    }
    let b = quantile(frechet_upper(u, 1.0 - v));
    let half_st = 0.5 * t.sqrt();
    // The survival function usually kinks where it leaves 1 or reaches 0; a
    // panel edge there keeps every node from landing on one side of it.
    let mut points: Vec<f64> = (0..=START_PANELS)
        .map(|i| LOWER + (a - LOWER) * i as f64 / START_PANELS as f64)
        .collect();
    let s_of = |w: f64| half_st * (b - w);
    for s in support_edges(survival, s_of(a), s_of(LOWER)) {
        let w = b - s / half_st;
        if w > LOWER && w < a {
            points.push(w);
        }
    }
    points.sort_by(f64::total_cmp);
    let q = integrate_pieces(|w| pdf(w) * survival(half_st * (b - w)).clamp(0.0, 1.0), &points, 1e-10);
    if !q.converged || !q.value.is_finite() {
        return Err(Error::Numerical {
            routine: "random_barrier",
            detail: format!("quadrature error estimate {:.3e} above 1e-10", q.abs_err),
        });
    }
    let integral = q.value;
    Ok((v - integral).clamp(frechet_lower(u, v), frechet_upper(u, v)))
}

/// Where a non-increasing survival function leaves 1 and reaches 0 inside [lo, hi].
fn support_edges(survival: &(dyn Fn(f64) -> f64 + Send + Sync), lo: f64, hi: f64) -> Vec<f64> {
    let mut edges = Vec::new();
    let mut bisect = |pred: &dyn Fn(f64) -> bool| {
        if !pred(lo) || pred(hi) {
            return;
        }
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if pred(m) {
                a = m;
            } else {
                b = m;
            }
        }
        edges.push(0.5 * (a + b));
    };
    bisect(&|s| survival(s) >= 1.0);
    bisect(&|s| survival(s) > 0.0);
    edges
}

/// Spread level mass r = 2Φ(−η/2) used by the patchwork copula.
pub fn patchwork_mass(eta: f64) -> f64 {
    2.0 * cdf(-0.5 * eta)
}

/// W outside the square [1−r, 1]×[0, r], a Gaussian copula rescaled inside.
pub fn patchwork(u: f64, v: f64, eta: f64, rho: f64) -> f64 {
    if let Some(c) = boundary(u, v) {
        return c;
    }
    let r = patchwork_mass(eta);
    let outside = if v >= r { frechet_lower(u, v) - frechet_lower(u, r) } else { 0.0 };
    let inner = gaussian((u + r - 1.0).max(0.0) / r, (v / r).min(1.0), rho);
    outside + r * inner
}
