use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use refcopula::math_kernels::cdf;
use serde_json::Value;
use tempfile::TempDir;

fn refcopula(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_refcopula"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &TempDir, name: &str, json: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

/// Rows of a CSV with a header, parsed as floats.
fn rows(path: &Path) -> (String, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines.map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gaussian_zero_grid_is_independence() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", r#"{"copula": {"family": "gaussian", "rho": 0.0}, "resolution": 8}"#);
    let out = refcopula(dir.path(), &["copula-grid", "--config", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = rows(&dir.path().join("copula.csv"));
    assert_eq!(header, "u,v,C");
    assert_eq!(rows.len(), 81);
    for r in &rows {
        assert!((r[2] - r[0] * r[1]).abs() < 1e-12);
    }
    let report = json(&dir.path().join("copula_axioms.json"));
    assert_eq!(report["passed"], Value::Bool(true));
    assert_eq!(report["family"], "gaussian");
}

#[test]
fn resolution_flag_overrides_config() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", r#"{"copula": {"family": "exp_barrier", "t": 1, "h": 2, "lambda": 2}, "resolution": 50}"#);
    let out = refcopula(dir.path(), &["copula-grid", "--config", &cfg, "--resolution", "4"]);
    assert!(out.status.success());
    assert_eq!(rows(&dir.path().join("copula.csv")).1.len(), 25);
    let manifest = json(&dir.path().join("copula-grid.manifest.json"));
    assert_eq!(manifest["config"]["resolution"], 4);
    assert_eq!(manifest["command"], "copula-grid");
    assert_eq!(manifest["outputs"], serde_json::json!(["copula.csv", "copula_axioms.json"]));
    assert_eq!(manifest["config_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn invalid_parameters_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let bad = write_config(&dir, "bad.json", r#"{"copula": {"family": "reflection", "t": 1, "h": -2}}"#);
    assert_eq!(refcopula(dir.path(), &["copula-grid", "--config", &bad]).status.code(), Some(2));
    let typo = write_config(&dir, "typo.json", r#"{"copula": {"family": "gausian", "rho": 0.1}}"#);
    assert_eq!(refcopula(dir.path(), &["copula-grid", "--config", &typo]).status.code(), Some(2));
    assert_eq!(refcopula(dir.path(), &["copula-grid", "--mode", "mc"]).status.code(), Some(2));
    assert_eq!(refcopula(dir.path(), &["simulate", "--paths", "0"]).status.code(), Some(2));
    assert_eq!(refcopula(dir.path(), &["no-such-command"]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    let code = refcopula(dir.path(), &["survival", "--config", missing.to_str().unwrap()]).status.code();
    assert_eq!(code, Some(2));
}

#[test]
fn survival_with_zero_correlation_ignores_reflections() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "s.json",
        r#"{"model": {"model": "multibarrier", "nu": 0, "eta": 0.5, "rho": 0, "caps": [0, 3, 20]},
            "t": 1, "x": {"from": -1, "to": 1, "points": 11}}"#,
    );
    let out = refcopula(dir.path(), &["survival", "--config", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, base) = rows(&dir.path().join("survival_n0.csv"));
    assert_eq!(header, "x,p");
    for n in [3, 20] {
        let (_, other) = rows(&dir.path().join(format!("survival_n{n}.csv")));
        for (a, b) in base.iter().zip(&other) {
            assert!((a[1] - b[1]).abs() < 1e-12);
        }
    }
}

#[test]
fn survival_both_joins_analytic_and_monte_carlo() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "s.json",
        r#"{"model": {"model": "gaussian", "rho": 0.3}, "t": 1, "x": {"from": 0, "to": 1, "points": 5},
            "paths": 20000, "dt": 0.5, "seed": 4}"#,
    );
    let out = refcopula(dir.path(), &["survival", "--config", &cfg, "--mode", "both"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = rows(&dir.path().join("survival.csv"));
    assert_eq!(header, "x,p_analytic,p_mc,lo99,hi99");
    for r in &rows {
        assert!(r[3] <= r[2] && r[2] <= r[4]);
        assert!((r[1] - r[2]).abs() < 0.02, "{r:?}");
    }
    let manifest = json(&dir.path().join("survival.manifest.json"));
    assert_eq!(manifest["seed"], 4);
    assert_eq!(manifest["config"]["mode"], "both");
    // Analytic-only models refuse Monte Carlo and the reverse.
    let lc = write_config(&dir, "lc.json", r#"{"model": {"model": "local_corr", "nu": 0, "eta": 0.5, "rho1": -0.9, "rho2": 0.9}}"#);
    assert_eq!(refcopula(dir.path(), &["survival", "--config", &lc]).status.code(), Some(2));
}

#[test]
fn calibrate_examples_and_range_errors() {
    let dir = TempDir::new().unwrap();
    let run = |target: f64| refcopula(dir.path(), &["calibrate", "--target", &target.to_string()]);

    // With ρ = 0 reflections do not change the law, so the survival is Φ(−z/√(2t)).
    let out = run(cdf(-0.25 / 2f64.sqrt()));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(&dir.path().join("calibration.json"))["rho"].as_f64().unwrap().abs() < 1e-6);

    let out = run(0.5);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let cal = json(&dir.path().join("calibration.json"));
    assert!((cal["achieved"].as_f64().unwrap() - 0.5).abs() < 1e-7);
    let hi = cal["valid_range"][1].as_f64().unwrap();
    let printed: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(printed, cal);

    let out = run(hi);
    assert!(out.status.success());
    assert_eq!(json(&dir.path().join("calibration.json"))["rho"].as_f64().unwrap(), 1.0);

    let out = run(hi + 0.01);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("achievable range"));

    let bad_z = write_config(&dir, "z.json", r#"{"target": 0.3, "z": 0.7, "eta": 0.5}"#);
    assert_eq!(refcopula(dir.path(), &["calibrate", "--config", &bad_z]).status.code(), Some(2));
}

#[test]
fn simulate_is_byte_identical_on_rerun() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let args = ["simulate", "--paths", "3", "--dt", "0.01", "--seed", "11"];
    assert!(refcopula(a.path(), &args).status.success());
    assert!(refcopula(b.path(), &args).status.success());
    for name in ["paths.csv", "simulate.manifest.json"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
    }
    let (header, rows) = rows(&a.path().join("paths.csv"));
    assert_eq!(header, "path_id,t,X,Y");
    assert_eq!(rows.len(), 3 * 2001);
    assert_eq!(&rows[0][1..], &[0.0, 0.0, 0.0]);

    let c = TempDir::new().unwrap();
    assert!(refcopula(c.path(), &["simulate", "--paths", "3", "--dt", "0.01", "--seed", "12"]).status.success());
    assert_ne!(fs::read(a.path().join("paths.csv")).unwrap(), fs::read(c.path().join("paths.csv")).unwrap());
}

#[test]
fn simulate_commodity_products() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "c.json",
        r#"{"model": {"model": "commodity", "products": ["spot", {"month_ahead": 3}],
                      "dependence": {"kind": "multibarrier", "nu": 0, "eta": 0.5, "rho": 0.9}},
            "horizon": 0.1, "dt": 0.01, "paths": 4, "record": "terminal"}"#,
    );
    let out = refcopula(dir.path(), &["simulate", "--config", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["commodity_spot.csv", "commodity_3mah.csv"] {
        let (header, rows) = rows(&dir.path().join(name));
        assert_eq!(header, "path_id,t,fE,fG,spread");
        assert_eq!(rows.len(), 8);
        for r in &rows {
            assert!((r[4] - (r[2] - r[3])).abs() < 1e-9);
        }
    }
}

#[test]
fn empirical_copula_of_comonotone_samples_is_upper_bound() {
    let dir = TempDir::new().unwrap();
    let samples: String = (0..500).map(|i| format!("{i},{}\n", 2 * i)).collect();
    let file = dir.path().join("pairs.csv");
    fs::write(&file, format!("x,y\n{samples}")).unwrap();
    let cfg = write_config(
        &dir,
        "e.json",
        &format!(r#"{{"model": {{"model": "samples", "file": {:?}}}, "resolution": 10}}"#, file.to_str().unwrap()),
    );
    let out = refcopula(dir.path(), &["empirical-copula", "--config", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = rows(&dir.path().join("empirical_copula.csv"));
    assert_eq!(header, "u,v,C_emp");
    for r in &rows {
        assert!((r[2] - r[0].min(r[1])).abs() <= 1.0 / 500.0 + 1e-12, "{r:?}");
    }
    assert_eq!(json(&dir.path().join("empirical-copula.manifest.json"))["seed"], Value::Null);
}

#[test]
fn empirical_copula_of_simulated_reflection_pair() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "e.json",
        r#"{"model": {"model": "reflection", "h": 0.5}, "t": 1, "dt": 0.01, "paths": 400, "resolution": 5}"#,
    );
    let out = refcopula(dir.path(), &["empirical-copula", "--config", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (_, rows) = rows(&dir.path().join("empirical_copula.csv"));
    assert_eq!(rows.len(), 36);
    // Boundary rows of an empirical copula hold exactly.
    for r in rows.iter().filter(|r| r[0] == 1.0) {
        assert!((r[2] - r[1]).abs() <= 1.0 / 400.0);
    }
}
