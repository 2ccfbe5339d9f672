//! Adaptive Gauss–Kronrod (7, 15) quadrature on finite intervals.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_PANELS: usize = 4000;

#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub value: f64,
    pub abs_err: f64,
    pub panels: usize,
    pub converged: bool,
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = hw * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Panel {
        a,
        b,
        value: k * hw,
        err: ((k - g) * hw).abs(),
    }
}

/// Integrates `f` over `[a, b]`, bisecting the worst panel until the summed
/// error estimate drops below `abs_tol`. Never fails; check `converged`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64) -> Quad {
    if a == b {
        return Quad { value: 0.0, abs_err: 0.0, panels: 0, converged: true };
    }
    let mut panels = vec![kronrod(&mut f, a, b)];
    loop {
        let (value, err) = panels
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.err));
        if err <= abs_tol || panels.len() >= MAX_PANELS {
            return Quad {
                value,
                abs_err: err,
                panels: panels.len(),
                converged: err <= abs_tol,
            };
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap();
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // Panel cannot be split further in floating point.
            return Quad {
                value,
                abs_err: err,
                panels: panels.len() + 1,
                converged: false,
            };
        }
        panels.push(kronrod(&mut f, p.a, mid));
        panels.push(kronrod(&mut f, mid, p.b));
    }
}

/// Sums [`integrate`] over consecutive breakpoints, sharing the tolerance.
pub fn integrate_pieces<F: FnMut(f64) -> f64>(mut f: F, points: &[f64], abs_tol: f64) -> Quad {
    let n = points.len().saturating_sub(1).max(1);
    let mut out = Quad { value: 0.0, abs_err: 0.0, panels: 0, converged: true };
    for w in points.windows(2) {
        let q = integrate(&mut f, w[0], w[1], abs_tol / n as f64);
        out.value += q.value;
        out.abs_err += q.abs_err;
        out.panels += q.panels;
        out.converged &= q.converged;
    }
    out
}

/// Like [`integrate`] but turns non-convergence into an error.
pub fn integrate_checked<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    routine: &'static str,
) -> Result<f64> {
    let q = integrate(f, a, b, abs_tol);
    if q.converged && q.value.is_finite() {
        Ok(q.value)
    } else {
        Err(Error::Numerical {
            routine,
            detail: format!(
                "quadrature on [{a}, {b}] stopped at error {:.3e} > {abs_tol:.1e} after {} panels",
                q.abs_err, q.panels
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_low_degree_polynomials() {
        // K15 integrates degree ≤ 22 exactly; G7 degree ≤ 13.
        for deg in 0..=13 {
            let q = integrate(|x: f64| x.powi(deg), -1.0, 2.0, 1e-12);
            let exact = (2f64.powi(deg + 1) - (-1f64).powi(deg + 1)) / (deg + 1) as f64;
            assert!((q.value - exact).abs() < 1e-12 * exact.abs().max(1.0), "deg {deg}");
            assert_eq!(q.panels, 1, "deg {deg}");
        }
    }

    #[test]
    fn adapts_to_a_kink() {
        let q = integrate(|x: f64| (x - 0.3).abs(), 0.0, 1.0, 1e-12);
        assert!(q.converged);
        assert!((q.value - (0.045 + 0.245)).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        // Needs far more than MAX_PANELS panels to resolve.
        let r = integrate_checked(|x: f64| (1e6 * x).sin(), 0.0, 100.0, 1e-14, "test");
        assert!(matches!(r, Err(Error::Numerical { .. })));
    }
}
