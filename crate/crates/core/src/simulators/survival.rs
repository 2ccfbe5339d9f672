//! Empirical survival curves with normal-approximation bands.

use std::io::{self, Write};

use crate::error::{ensure, Result};
use crate::math_kernels::quantile;

pub const MIN_SAMPLES: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalCurve {
    pub x: Vec<f64>,
    pub p: Vec<f64>,
    /// Confidence level and (lo, hi) per grid point, for empirical curves.
    pub band: Option<(f64, Vec<(f64, f64)>)>,
}

impl SurvivalCurve {
    pub fn analytic(x: Vec<f64>, p: Vec<f64>) -> Self {
        Self { x, p, band: None }
    }

    /// Writes `x,p` or `x,p,loNN,hiNN` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        match &self.band {
            None => {
                writeln!(out, "x,p")?;
                for (x, p) in self.x.iter().zip(&self.p) {
                    writeln!(out, "{x:.16e},{p:.16e}")?;
                }
            }
            Some((c, band)) => {
                let pct = (c * 100.0).round() as u32;
                writeln!(out, "x,p,lo{pct},hi{pct}")?;
                for ((x, p), (lo, hi)) in self.x.iter().zip(&self.p).zip(band) {
                    writeln!(out, "{x:.16e},{p:.16e},{lo:.16e},{hi:.16e}")?;
                }
            }
        }
        Ok(())
    }
}

/// p̂(x) = #{samples ≥ x}/N with band p̂ ± z·√(p̂(1−p̂)/N), clamped to [0, 1].
pub fn empirical_survival(samples: &[f64], x_grid: &[f64], confidence: f64) -> Result<SurvivalCurve> {
    ensure(samples.len() >= MIN_SAMPLES, || {
        format!("need at least {MIN_SAMPLES} samples, got {}", samples.len())
    })?;
    ensure(confidence > 0.0 && confidence < 1.0, || {
        format!("confidence must lie in (0, 1), got {confidence}")
    })?;
    ensure(x_grid.windows(2).all(|w| w[0] <= w[1]), || "x grid must be sorted".into())?;
    ensure(samples.iter().all(|s| !s.is_nan()), || "samples must not contain NaN".into())?;
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let z = quantile(0.5 * (1.0 + confidence));
    let mut p = Vec::with_capacity(x_grid.len());
    let mut band = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        let below = sorted.partition_point(|&s| s < x);
        let ph = (sorted.len() - below) as f64 / n;
        let half = z * (ph * (1.0 - ph) / n).sqrt();
        p.push(ph);
        band.push(((ph - half).max(0.0), (ph + half).min(1.0)));
    }
    Ok(SurvivalCurve { x: x_grid.to_vec(), p, band: Some((confidence, band)) })
}

/// Standard error √(p(1−p)/N) of a proportion.
pub fn proportion_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Fraction of samples ≥ x.
pub fn fraction_at_least(samples: &[f64], x: f64) -> f64 {
    samples.iter().filter(|&&s| s >= x).count() as f64 / samples.len() as f64
}
