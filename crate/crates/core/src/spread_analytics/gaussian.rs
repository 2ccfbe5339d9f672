//! Spread survival under Gaussian, reflection and exponential-barrier copulae.

use crate::error::{ensure, Error, Result};
use crate::math_kernels::{cdf, pdf_times_mills, quantile};

fn check_t(t: f64) -> Result<()> {
    ensure(t > 0.0 && t.is_finite(), || format!("t must be positive, got {t}"))
}

/// P(X_t − Y_t ≥ η) for Brownian motions with constant correlation ρ.
pub fn gaussian_spread_survival(eta: f64, t: f64, rho: f64) -> Result<f64> {
    check_t(t)?;
    ensure((-1.0..=1.0).contains(&rho), || format!("rho must lie in [-1, 1], got {rho}"))?;
    if rho == 1.0 {
        return Ok(if eta <= 0.0 { 1.0 } else { 0.0 });
    }
    Ok(cdf(-eta / (2.0 * (1.0 - rho) * t).sqrt()))
}

/// Largest spread survival over all dynamic copulae, attained by reflecting
/// at η/2: 2Φ(−η/(2√t)).
pub fn rbc_spread_survival(eta: f64, t: f64) -> Result<f64> {
    check_t(t)?;
    ensure(eta > 0.0, || format!("eta must be positive, got {eta}"))?;
    Ok(2.0 * cdf(-eta / (2.0 * t.sqrt())))
}

/// P(X_t − Y_t ≥ x) when Y reflects X at the fixed level h > 0.
///
/// The spread is 2X before the hit and 2h after, so it has an atom at 2h.
pub fn reflection_spread_survival(x: f64, t: f64, h: f64) -> Result<f64> {
    check_t(t)?;
    ensure(h > 0.0 && h.is_finite(), || format!("h must be positive, got {h}"))?;
    let st = t.sqrt();
    Ok(if x > 2.0 * h {
        0.0
    } else if x == 2.0 * h {
        2.0 * cdf(-h / st)
    } else {
        cdf(-x / (2.0 * st)) + cdf((x - 4.0 * h) / (2.0 * st))
    })
}

/// P(X_t − Y_t ≥ x) when Y reflects X at the random level h + Exp(λ).
pub fn exp_barrier_spread_survival(x: f64, t: f64, h: f64, lambda: f64) -> Result<f64> {
    check_t(t)?;
    ensure(h >= 0.0 && h.is_finite(), || format!("h must be ≥ 0, got {h}"))?;
    ensure(lambda > 0.0 && lambda.is_finite(), || format!("lambda must be positive, got {lambda}"))?;
    let st = t.sqrt();
    let z = x / (2.0 * st);
    let k = 0.5 * lambda * st;
    let p = if x >= 2.0 * h {
        (-lambda * (0.5 * x - h)).exp() * (2.0 * cdf(-z) - pdf_times_mills(z, z + k))
    } else {
        let w = (x - 4.0 * h) / (2.0 * st);
        cdf(-z) + cdf(w) - pdf_times_mills(w, k - w)
    };
    Ok(p.clamp(0.0, 1.0))
}

/// Constant correlation whose Gaussian spread survival at η equals `x`.
pub fn gaussian_rho_for_target(x: f64, eta: f64, t: f64) -> Result<f64> {
    check_t(t)?;
    ensure(eta > 0.0, || format!("eta must be positive, got {eta}"))?;
    let hi = cdf(-eta / (2.0 * t.sqrt()));
    if !(x > 0.0 && x <= hi) {
        return Err(Error::Range { what: "target", value: x, lo: 0.0, hi });
    }
    let q = quantile(x);
    Ok((1.0 - eta * eta / (2.0 * t * q * q)).max(-1.0))
}
