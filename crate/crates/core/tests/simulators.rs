use refcopula::math_kernels::cdf;
use refcopula::simulators::{
    empirical_survival, fraction_at_least, proportion_se, simulate_local_correlation, simulate_multibarrier,
    gen_normal_increments, simulate_multibarrier_caps, simulate_reflection_pair, simulate_two_factor,
    simulate_two_factor_products, Dependence, ForwardCurve, LocalCorrParams, PathBatch, ProductSpec, Record,
    SimConfig, Stream, SurvivalCurve, TwoFactorParams,
};
use refcopula::spread_analytics::{mb_hit_time_cdf, mb_survival, Cap, MultiBarrierParams};

/// Two-sided KS distance between `samples` and N(0, 1).
fn ks_std_normal(samples: &[f64]) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value of the KS statistic.
fn ks_critical_1pct(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}

/// X must pass KS outright. Y gets `y_slack` on top, because barrier
/// crossings are only detected on the grid.
fn assert_brownian_marginals(batch: &PathBatch, t: f64, y_slack: f64, label: &str) {
    let slot = batch.slot(t);
    let crit = ks_critical_1pct(batch.n_paths);
    for (name, v, slack) in [("X", batch.x_at(slot), 0.0), ("Y", batch.y_at(slot), y_slack)] {
        let z: Vec<f64> = v.iter().map(|x| x / t.sqrt()).collect();
        let ks = ks_std_normal(&z);
        assert!(ks < crit + slack, "{label} {name}: KS {ks} ≥ {}", crit + slack);
    }
}

fn standard_params() -> MultiBarrierParams {
    MultiBarrierParams::new(0.0, 0.5, 0.9).unwrap()
}

#[test]
fn reflection_marginals_are_brownian() {
    let dt: f64 = 1e-3;
    let b = simulate_reflection_pair(0.3, &SimConfig::new(dt, 1.0, 100_000, 1)).unwrap();
    // Paths whose crossing falls between grid points keep Y = −X; their mass is O(√dt).
    assert_brownian_marginals(&b, 1.0, dt.sqrt(), "reflection");
}

#[test]
fn multibarrier_marginals_are_brownian() {
    let dt: f64 = 1e-3;
    let b = simulate_multibarrier(&standard_params(), Cap::Unbounded, &SimConfig::new(dt, 1.0, 100_000, 2)).unwrap();
    assert_brownian_marginals(&b, 1.0, dt.sqrt(), "multi-barrier");
}

#[test]
fn local_correlation_marginals_are_brownian() {
    let params = LocalCorrParams::new(0.0, 0.5, 0.9, -0.5).unwrap();
    let b = simulate_local_correlation(&params, &SimConfig::new(0.01, 1.0, 100_000, 3)).unwrap();
    assert_brownian_marginals(&b, 1.0, 0.0, "local correlation");
}

#[test]
fn normal_increments_moments() {
    let n = 1_000_000;
    let dt = 0.01;
    let a = gen_normal_increments(3, Stream::X, 0, dt, n);
    let b = gen_normal_increments(3, Stream::Y, 0, dt, n);
    let mean = a.iter().sum::<f64>() / n as f64;
    assert!(mean.abs() < 4.0 * dt.sqrt() / (n as f64).sqrt());
    let var = a.iter().map(|x| x * x).sum::<f64>() / n as f64;
    assert!((var / dt - 1.0).abs() < 4.0 * (2.0 / n as f64).sqrt());
    let r = a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>() / (n as f64 * dt);
    assert!(r.abs() < 4.0 / (n as f64).sqrt());
}

#[test]
fn multibarrier_matches_analytic_survival() {
    let n = 100_000;
    let dt: f64 = 1e-3;
    let p = standard_params();
    let caps = [Cap::Finite(0), Cap::Finite(1), Cap::Finite(5)];
    let batches = simulate_multibarrier_caps(&p, &caps, &SimConfig::new(dt, 1.0, n, 21)).unwrap();
    for (cap, b) in [0u64, 1, 5].into_iter().zip(&batches) {
        let d = b.spread_at(b.slot(1.0));
        for x in [0.0, 0.25, 0.5] {
            let exact = mb_survival(cap, 1.0, x, &p).unwrap();
            let got = fraction_at_least(&d, x);
            let tol = 3.0 * proportion_se(exact, n) + 2.0 * dt.sqrt();
            assert!((got - exact).abs() <= tol, "n={cap} x={x}: {got} vs {exact}");
        }
    }
    // Reflection-count law.
    let counts = batches[2].reflections_by(1.0).unwrap();
    for k in 1..=3u64 {
        let exact = mb_hit_time_cdf(k, 1.0, &p).unwrap();
        let got = counts.iter().filter(|&&c| c >= k).count() as f64 / n as f64;
        let tol = 3.0 * proportion_se(exact, n) + 2.0 * dt.sqrt();
        assert!((got - exact).abs() <= tol, "k={k}: {got} vs {exact}");
    }
}

#[test]
fn local_correlation_variances_and_survival() {
    let n = 50_000;
    let params = LocalCorrParams::new(0.0, 0.5, -0.9, 0.9).unwrap();
    let b = simulate_local_correlation(&params, &SimConfig::new(0.01, 1.0, n, 22)).unwrap();
    let s = b.slot(1.0);
    for v in [b.x_at(s), b.y_at(s)] {
        let var = v.iter().map(|x| x * x).sum::<f64>() / n as f64;
        assert!((var - 1.0).abs() <= 4.0 * (2.0 / n as f64).sqrt(), "var {var}");
    }
    let d = b.spread_at(s);
    for x in [0.1, 0.25, 0.4] {
        assert!(fraction_at_least(&d, x) > 0.5, "x = {x}");
    }
}

#[test]
fn same_seed_same_paths() {
    let cfg = SimConfig::new(0.01, 1.0, 50, 9).with_record(Record::All);
    let a = simulate_multibarrier(&standard_params(), Cap::Finite(3), &cfg).unwrap();
    let b = simulate_multibarrier(&standard_params(), Cap::Finite(3), &cfg).unwrap();
    assert_eq!(a, b);
    let other = simulate_multibarrier(&standard_params(), Cap::Finite(3), &SimConfig { seed: 10, ..cfg.clone() }).unwrap();
    assert_ne!(a.x, other.x);
}

#[test]
fn paths_do_not_depend_on_batch_size() {
    let small = simulate_reflection_pair(0.2, &SimConfig::new(0.01, 1.0, 10, 5)).unwrap();
    let large = simulate_reflection_pair(0.2, &SimConfig::new(0.01, 1.0, 40, 5)).unwrap();
    let n = small.times.len();
    assert_eq!(small.x[..], large.x[..10 * n]);
    assert_eq!(small.y[..], large.y[..10 * n]);
}

#[test]
fn record_modes() {
    let cfg = SimConfig::new(0.1, 1.0, 3, 0);
    let all = simulate_reflection_pair(0.2, &cfg.clone().with_record(Record::All)).unwrap();
    assert_eq!(all.times.len(), 11);
    let term = simulate_reflection_pair(0.2, &cfg).unwrap();
    assert_eq!(term.times, vec![0.0, 1.0]);
    let some = simulate_reflection_pair(0.2, &cfg.clone().with_record(Record::Times(vec![0.5, 0.3]))).unwrap();
    assert_eq!(some.times.len(), 3);
    // Terminal values agree whatever is recorded.
    assert_eq!(all.x_at(10), term.x_at(1));
    assert!(SimConfig::new(0.1, 1.0, 3, 0).with_record(Record::Times(vec![2.0])).validate().is_err());
    assert!(SimConfig::new(0.0, 1.0, 3, 0).validate().is_err());
    assert!(SimConfig::new(0.1, 1.0, 0, 0).validate().is_err());
}

#[test]
fn reflection_pair_structure() {
    let h = 0.25;
    let b = simulate_reflection_pair(h, &SimConfig::new(1e-3, 1.0, 2_000, 4)).unwrap();
    let counts = b.reflections.as_ref().unwrap();
    let times = b.reflection_times.as_ref().unwrap();
    let slot = b.slot(1.0);
    for p in 0..b.n_paths {
        assert!(counts[p] <= 1);
        assert_eq!(counts[p] as usize, times[p].len());
        let d = b.spread[p * b.times.len() + slot];
        if counts[p] == 1 {
            assert!((d - 2.0 * h).abs() < 1e-12);
        } else {
            assert!(d < 2.0 * h);
        }
    }
}

#[test]
fn reflection_caps_are_respected() {
    let cfg = SimConfig::new(1e-3, 5.0, 500, 6);
    let b = simulate_multibarrier(&standard_params(), Cap::Finite(2), &cfg).unwrap();
    assert!(b.reflections.as_ref().unwrap().iter().all(|&k| k <= 2));
    let zero = simulate_multibarrier(&standard_params(), Cap::Finite(0), &cfg).unwrap();
    assert!(zero.reflections.as_ref().unwrap().iter().all(|&k| k == 0));
    // With no reflection allowed the spread is a plain Gaussian with variance 2(1+ρ)t.
    let d = zero.spread_at(zero.slot(5.0));
    let var = d.iter().map(|x| x * x).sum::<f64>() / d.len() as f64;
    assert!((var / (2.0 * 1.9 * 5.0) - 1.0).abs() < 0.2);
}

#[test]
fn spread_survival_tracks_gaussian_formula() {
    let n = 100_000;
    let rho: f64 = 0.5;
    let params = LocalCorrParams::new(0.0, 0.5, rho, rho).unwrap();
    let b = simulate_local_correlation(&params, &SimConfig::new(0.1, 1.0, n, 8)).unwrap();
    let d = b.spread_at(b.slot(1.0));
    for x in [0.0, 0.3, 1.0] {
        let p = cdf(-x / (2.0 * (1.0 - rho)).sqrt());
        assert!((fraction_at_least(&d, x) - p).abs() <= 3.0 * proportion_se(p, n));
    }
}

#[test]
fn two_factor_prices_are_martingales() {
    let n = 20_000;
    let dt: f64 = 1.0 / 365.0;
    let cfg = SimConfig::new(dt, 0.5, n, 12);
    let params = TwoFactorParams::default();
    let products = [ProductSpec::Forward { maturity: 1.0 }, ProductSpec::Spot, ProductSpec::MonthAhead(1)];
    // Snapping D back to the barrier shifts the coal factor by the overshoot,
    // so the barrier model gets a 2√dt allowance in log-price units.
    for (dep, slack) in [
        (Dependence::Constant { rho: 0.3 }, 0.0),
        (Dependence::MultiBarrier { params: standard_params(), cap: Cap::Unbounded }, 2.0 * dt.sqrt()),
    ] {
        for batch in simulate_two_factor_products(&params, &products, &dep, &cfg).unwrap() {
            let s = batch.slot(0.5);
            for (name, v, bias) in [
                ("fE", batch.fe_at(s), 0.0),
                ("fG", batch.fg_at(s), 100.0 * params.coal.sigma_l * slack),
            ] {
                let mean = v.iter().sum::<f64>() / n as f64;
                let sd = (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
                let se = sd / (n as f64).sqrt();
                assert!((mean - 100.0).abs() <= 4.0 * se + bias, "{} {name}: {mean} ± {se}", batch.product.label());
            }
            assert_eq!(batch.fe_at(0)[0], 100.0);
        }
    }
}

#[test]
fn two_factor_initial_prices_follow_the_curve() {
    let params = TwoFactorParams {
        curve_e: ForwardCurve::Table(vec![(0.0, 50.0), (1.0, 70.0)]),
        ..TwoFactorParams::default()
    };
    let b = simulate_two_factor(
        &params,
        ProductSpec::Forward { maturity: 0.5 },
        &Dependence::Constant { rho: 0.0 },
        &SimConfig::new(0.1, 0.5, 2, 0),
    )
    .unwrap();
    assert!((b.fe_at(0)[0] - 60.0).abs() < 1e-12);
    let spread = b.spread_at(0)[0];
    assert!((spread - (60.0 - 100.0)).abs() < 1e-12);
}

#[test]
fn forward_maturing_before_observation_is_rejected() {
    let r = simulate_two_factor(
        &TwoFactorParams::default(),
        ProductSpec::Forward { maturity: 0.2 },
        &Dependence::Constant { rho: 0.0 },
        &SimConfig::new(0.1, 0.5, 2, 0),
    );
    assert!(r.is_err());
}

#[test]
fn empirical_survival_band_covers_truth() {
    let b = simulate_reflection_pair(0.3, &SimConfig::new(0.5, 1.0, 20_000, 13)).unwrap();
    let x = b.x_at(1);
    let grid: Vec<f64> = (0..41).map(|i| -2.0 + 0.1 * i as f64).collect();
    let curve = empirical_survival(&x, &grid, 0.99).unwrap();
    let (_, band) = curve.band.as_ref().unwrap();
    let covered = grid.iter().zip(band).filter(|(&g, &(lo, hi))| (lo..=hi).contains(&cdf(-g))).count();
    assert!(covered >= 37, "{covered}/41");
    assert!(empirical_survival(&x[..10], &grid, 0.99).is_err());
    assert!(empirical_survival(&x, &[1.0, 0.0], 0.99).is_err());
}

#[test]
fn csv_layouts() {
    let b = simulate_reflection_pair(0.3, &SimConfig::new(0.5, 1.0, 2, 0)).unwrap();
    let mut buf = Vec::new();
    b.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("path_id,t,X,Y"));
    assert_eq!(text.lines().count(), 1 + 2 * 2);
    assert!(!text.contains('\r'));

    let mut buf = Vec::new();
    SurvivalCurve::analytic(vec![0.0, 1.0], vec![0.5, 0.2]).write_csv(&mut buf).unwrap();
    assert!(String::from_utf8(buf).unwrap().starts_with("x,p\n"));
    let curve = empirical_survival(&[0.0; 40], &[0.0], 0.99).unwrap();
    let mut buf = Vec::new();
    curve.write_csv(&mut buf).unwrap();
    assert!(String::from_utf8(buf).unwrap().starts_with("x,p,lo99,hi99\n"));
}
