//! Bivariate standard normal CDF Φ_ρ(x, y).

use super::normal::{cdf, pdf};
use super::quadrature::integrate_pieces;
use crate::error::{ensure, Result};

/// Lower truncation point of the single-integral reduction.
const CUT: f64 = 8.5;
const QUAD_TOL: f64 = 1e-13;

/// Φ_ρ(x, y) = P(X ≤ x, Y ≤ y) for standard normals with correlation ρ.
///
/// Infinite x or y are accepted. ρ is clamped to [-1, 1]; within 1e-12 of
/// ±1 the comonotone / countermonotone closed forms are used.
pub fn bvn_cdf(x: f64, y: f64, rho: f64) -> f64 {
    if x == f64::NEG_INFINITY || y == f64::NEG_INFINITY {
        return 0.0;
    }
    if x == f64::INFINITY {
        return cdf(y);
    }
    if y == f64::INFINITY {
        return cdf(x);
    }
    let rho = rho.clamp(-1.0, 1.0);
    if rho > 1.0 - 1e-12 {
        return cdf(x.min(y));
    }
    if rho < -1.0 + 1e-12 {
        return (cdf(x) + cdf(y) - 1.0).max(0.0);
    }
    if rho == 0.0 {
        return cdf(x) * cdf(y);
    }
    // Integrate over the smaller of the two marginals for fewer panels.
    let (x, y) = if x > y { (y, x) } else { (x, y) };
    let upper = x.min(CUT);
    if upper <= -CUT {
        return 0.0;
    }
    let s = (1.0 - rho * rho).sqrt();
    let integrand = |u: f64| cdf((y - rho * u) / s) * pdf(u);
    // The conditional CDF switches from ~0 to ~1 around u = y/ρ.
    let pivot = y / rho;
    let q = if pivot > -CUT && pivot < upper {
        integrate_pieces(integrand, &[-CUT, pivot, upper], QUAD_TOL)
    } else {
        integrate_pieces(integrand, &[-CUT, upper], QUAD_TOL)
    };
    q.value.clamp(0.0, 1.0)
}

/// Checked Φ_ρ(x, y). NaN arguments and |ρ| > 1 are domain errors.
pub fn bivariate_normal_cdf(x: f64, y: f64, rho: f64) -> Result<f64> {
    ensure(!x.is_nan() && !y.is_nan(), || "bivariate cdf arguments must not be NaN".into())?;
    ensure((-1.0..=1.0).contains(&rho), || format!("correlation must lie in [-1, 1], got {rho}"))?;
    Ok(bvn_cdf(x, y, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn orthant_probabilities() {
        for rho in [-0.99, -0.5, -0.1, 0.2, 0.5, 0.9, 0.999] {
            let want = 0.25 + f64::asin(rho) / (2.0 * PI);
            assert!((bvn_cdf(0.0, 0.0, rho) - want).abs() < 1e-12, "rho {rho}");
        }
    }

    #[test]
    fn sentinels_and_limits() {
        assert_eq!(bvn_cdf(f64::NEG_INFINITY, 1.0, 0.3), 0.0);
        assert_eq!(bvn_cdf(f64::INFINITY, 0.4, 0.3), cdf(0.4));
        assert_eq!(bvn_cdf(0.7, -0.2, 1.0), cdf(-0.2));
        assert_eq!(bvn_cdf(0.7, -0.2, -1.0), (cdf(0.7) + cdf(-0.2) - 1.0).max(0.0));
        assert!(bivariate_normal_cdf(0.0, 0.0, 1.5).is_err());
    }

    #[test]
    fn symmetric_in_arguments() {
        for (x, y, r) in [(0.3, -1.2, 0.7), (2.0, 1.0, -0.4), (-3.0, 4.0, 0.95)] {
            assert!((bvn_cdf(x, y, r) - bvn_cdf(y, x, r)).abs() < 1e-13);
        }
    }

    #[test]
    fn near_comonotone_is_close_to_the_limit() {
        let v = bvn_cdf(0.4, 0.1, 1.0 - 1e-10);
        assert!((v - cdf(0.1)).abs() < 1e-4);
    }
}
