//! Joint laws of a Brownian motion with its running extrema, and of the
//! increment after a hitting time.

use super::normal::cdf;
use crate::error::{ensure, Result};

fn check_time(t: f64) -> Result<()> {
    ensure(t > 0.0 && t.is_finite(), || format!("time must be positive and finite, got {t}"))
}

/// P(B_t ≤ x, sup_{s≤t} B_s ≤ y) for y ≥ 0.
pub fn brownian_max_joint_cdf(x: f64, y: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    ensure(y >= 0.0, || format!("running-maximum level must be ≥ 0, got {y}"))?;
    let st = t.sqrt();
    Ok(if x < y {
        (cdf(x / st) - cdf((x - 2.0 * y) / st)).max(0.0)
    } else {
        2.0 * cdf(y / st) - 1.0
    })
}

/// P(B_t ≤ x, inf_{s≤t} B_s ≤ y) for y ≤ 0.
pub fn brownian_min_joint_cdf(x: f64, y: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    ensure(y <= 0.0, || format!("running-minimum level must be ≤ 0, got {y}"))?;
    let st = t.sqrt();
    Ok(if x <= y {
        cdf(x / st)
    } else {
        2.0 * cdf(y / st) - cdf((2.0 * y - x) / st)
    })
}

/// P(B¹_t − B¹_{τ^h} ≤ x, τ^h ≤ t) where τ^h is the first time an independent
/// Brownian motion hits h ≥ 0.
pub fn stopped_increment_cdf(x: f64, h: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    ensure(h >= 0.0, || format!("barrier must be ≥ 0, got {h}"))?;
    let st = t.sqrt();
    Ok(if x < 0.0 {
        cdf((x - h) / st)
    } else {
        // 1 − 2Φ(h/√t) written as 2Φ(−h/√t) − 1 keeps precision for large h.
        cdf((x + h) / st) + 2.0 * cdf(-h / st) - 1.0
    }
    .clamp(0.0, 1.0))
}

/// P(τ^h ≤ t) = 2Φ(−h/√t).
pub fn hitting_time_cdf(h: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return if h <= 0.0 { 1.0 } else { 0.0 };
    }
    2.0 * cdf(-h.abs() / t.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_branches() {
        let v = brownian_max_joint_cdf(0.5, 1.0, 1.0).unwrap();
        assert!((v - (cdf(0.5) - cdf(-1.5))).abs() < 1e-15);
        let v = brownian_max_joint_cdf(2.0, 1.0, 1.0).unwrap();
        assert!((v - 0.682_689_492_137_085_9).abs() < 1e-14);
        assert_eq!(brownian_max_joint_cdf(0.3, 0.0, 1.0).unwrap(), 0.0);
        assert!(brownian_max_joint_cdf(0.3, -0.1, 1.0).is_err());
    }

    #[test]
    fn min_mirrors_max() {
        // P(B ≤ x, inf ≤ y) = P(B ≤ x) − P(B ≤ x, inf > y) and by x → −x:
        // P(B ≤ x, inf > y) = P(B ≥ −x, sup < −y) = P(sup < −y) − P(B < −x, sup < −y).
        for (x, y, t) in [(0.4, -0.5, 1.0), (-1.0, -0.3, 2.0), (0.0, -1.5, 0.7)] {
            let max_part = brownian_max_joint_cdf(-x, -y, t).unwrap();
            let sup_below = brownian_max_joint_cdf(f64::INFINITY, -y, t).unwrap();
            let want = cdf(x / t.sqrt()) - (sup_below - max_part);
            let got = brownian_min_joint_cdf(x, y, t).unwrap();
            assert!((got - want).abs() < 1e-14, "{x} {y} {t}: {got} vs {want}");
        }
        let b = brownian_min_joint_cdf(0.8, 0.0, 1.0).unwrap();
        assert!((b - (1.0 - cdf(-0.8))).abs() < 1e-15);
    }

    #[test]
    fn stopped_increment_limits() {
        let far = stopped_increment_cdf(40.0, 1.0, 1.0).unwrap();
        assert!((far - 0.317_310_507_862_914_1).abs() < 1e-14);
        assert_eq!(stopped_increment_cdf(-0.2, 1.0, 1.0).unwrap(), cdf(-1.2));
        for x in [0.0, 0.3, 2.0] {
            let v = stopped_increment_cdf(x, 0.0, 1.0).unwrap();
            assert!((v - cdf(x)).abs() < 1e-15);
        }
    }
}
