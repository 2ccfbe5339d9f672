//! Univariate standard normal density, CDF and quantile.

use crate::error::{domain, Error, Result};

pub const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

#[inline]
pub fn pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Φ(x). Infinite arguments give 0 or 1, NaN propagates.
#[inline]
pub fn cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Upper tail Φ(−x) = 1 − Φ(x), without cancellation.
#[inline]
pub fn sf(x: f64) -> f64 {
    cdf(-x)
}

/// Continued fraction for the Mills ratio (1 − Φ(z))/φ(z). Only used for large z.
fn mills_ratio(z: f64) -> f64 {
    let mut acc = z;
    for k in (1..=60).rev() {
        acc = z + k as f64 / acc;
    }
    1.0 / acc
}

/// φ(a)·Φ(−s)/φ(s), computed without overflow when s is large.
pub fn pdf_times_mills(a: f64, s: f64) -> f64 {
    if s >= 5.0 {
        pdf(a) * mills_ratio(s)
    } else {
        cdf(-s) * (0.5 * (s - a) * (s + a)).exp()
    }
}

/// ln Φ(x), finite for every finite x.
pub fn log_cdf(x: f64) -> f64 {
    if x < -20.0 {
        -0.5 * x * x - LN_SQRT_2PI + mills_ratio(-x).ln()
    } else if x > 5.0 {
        (-sf(x)).ln_1p()
    } else {
        cdf(x).ln()
    }
}

// Rational approximation used as the Newton starting point.
const A: [f64; 6] = [
    -3.969683028665376e+01,
    2.209460984245205e+02,
    -2.759285104469687e+02,
    1.383577518672690e+02,
    -3.066479806614716e+01,
    2.506628277459239e+00,
];
const B: [f64; 5] = [
    -5.447609879822406e+01,
    1.615858368580409e+02,
    -1.556989798598866e+02,
    6.680131188771972e+01,
    -1.328068155288572e+01,
];
const C: [f64; 6] = [
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e+00,
    -2.549732539343734e+00,
    4.374664141464968e+00,
    2.938163982698783e+00,
];
const D: [f64; 4] = [
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e+00,
    3.754408661907416e+00,
];
const P_LOW: f64 = 0.02425;

fn initial_guess(p: f64) -> f64 {
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

/// Lower-half quantile, p in (0, 0.5].
fn lower_quantile(p: f64) -> f64 {
    let mut x = initial_guess(p);
    if p < 1e-280 {
        // φ underflows here, so step on ln Φ instead.
        for _ in 0..3 {
            let ratio = mills_ratio(-x);
            x -= (log_cdf(x) - p.ln()) * ratio;
        }
    } else {
        for _ in 0..2 {
            x -= (cdf(x) - p) / pdf(x);
        }
    }
    x
}

/// Φ⁻¹(p). Returns ∓∞ at p = 0 or 1 and NaN outside [0, 1].
pub fn quantile(p: f64) -> f64 {
    if !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    if p <= 0.5 {
        lower_quantile(p)
    } else {
        -lower_quantile(1.0 - p)
    }
}

/// Checked Φ(x).
pub fn std_normal_cdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain(format!("normal cdf argument must be finite, got {x}")));
    }
    Ok(cdf(x))
}

/// Checked Φ⁻¹(p).
pub fn std_normal_quantile(p: f64) -> Result<f64> {
    if p == 0.0 || p == 1.0 {
        return Err(Error::InfiniteQuantile(p));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!("probability must lie in [0, 1], got {p}")));
    }
    Ok(quantile(p))
}
