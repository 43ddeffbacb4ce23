//! End-to-end runs of the `smt` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn smt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smt")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn rel_l2(report: &Value, profile: usize, metric: usize) -> f64 {
    report["profiles"][profile]["metrics"][metric]["rel_l2"].as_f64().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn phantom_listing() {
    let o = smt(&["phantoms"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("gaussian"));
    let tri = text.lines().find(|l| l.starts_with("triangle")).unwrap();
    assert!(tri.contains("a=0.25") && tri.contains("peak=0.5") && tri.contains("c=0.75"));
    let bump = text.lines().find(|l| l.starts_with("bump")).unwrap();
    assert!(bump.contains("a=0.3") && bump.contains("b=0.6"));
}

#[test]
fn simulate_fig1_layout_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let c = dir.path().join("c");
    assert!(smt(&["simulate", "--config", "fig1", "--out", path(&a)]).status.success());
    assert!(smt(&["simulate", "--config", "fig1", "--noise", "0", "--out", path(&b)]).status.success());
    let text = fs::read_to_string(a.join("data.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,value"));
    let ts: Vec<f64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ts.len(), 150);
    assert!(ts.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(fs::read(a.join("data.csv")).unwrap(), fs::read(b.join("data.csv")).unwrap());

    for d in [&b, &c] {
        let o = smt(&["simulate", "--config", "fig1", "--noise", "1e-6", "--seed", "11", "--out", path(d)]);
        assert!(o.status.success());
    }
    let noisy = fs::read(b.join("data.csv")).unwrap();
    assert_eq!(noisy, fs::read(c.join("data.csv")).unwrap());
    assert_ne!(noisy, fs::read(a.join("data.csv")).unwrap());
}

#[test]
fn fig1_simulate_then_invert() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    assert!(smt(&["simulate", "--config", "fig1", "--out", path(&out)]).status.success());
    let data = out.join("data.csv");
    let o = smt(&["invert", "--config", "fig1", "--data", path(&data), "--out", path(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report = stdout_json(&o);
    assert!(rel_l2(&report, 0, 0) <= 1e-3);
    assert_eq!(report["config"]["grid"]["nodes"], 150);
    assert_eq!(report["config"]["diff"]["method"], "auto");
    let on_disk: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(on_disk["profiles"], report["profiles"]);
    let profile = fs::read_to_string(out.join("profile.csv")).unwrap();
    assert!(profile.starts_with("r,value\n"));
}

#[test]
fn analytic_guard_for_nine_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n9");
    let sim = smt(&["simulate", "--dim", "9", "--nodes", "200", "--tmin", "0.05", "--tmax", "0.95", "--out", path(&out)]);
    assert!(sim.status.success(), "{}", String::from_utf8_lossy(&sim.stderr));
    let data = out.join("data.csv");
    let o = smt(&["invert", "--dim", "9", "--nodes", "200", "--method", "analytic", "--data", path(&data), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("analytic back-end available only for n ∈ {3,5,7}"));
    assert!(!out.join("report.json").exists());
}

#[test]
fn missing_data_file_leaves_no_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let missing = dir.path().join("nope.csv");
    let o = smt(&["invert", "--data", path(&missing), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn schema_mismatch_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "radius,value\n0.1,0.2\n").unwrap();
    let o = smt(&["invert", "--data", path(&bad), "--out", path(&dir.path().join("o"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unrecognized header"));
}

#[test]
fn degenerate_grid_fails_before_solving() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let o = smt(&["roundtrip", "--config", "fig1", "--nodes", "5", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nodes"));
    assert!(!out.exists());
}

#[test]
fn usage_errors() {
    assert_eq!(smt(&["roundtrip", "--config", "no-such-preset"]).status.code(), Some(1));
    assert_eq!(smt(&["roundtrip", "--diff", "magic"]).status.code(), Some(1));
    assert_eq!(smt(&["frobnicate"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "dim = 5\nunknown_key = 1\n").unwrap();
    assert_eq!(smt(&["roundtrip", "--config", path(&cfg)]).status.code(), Some(1));
}

#[test]
fn empty_window_is_a_numeric_failure() {
    let dir = tempfile::tempdir().unwrap();
    let o = smt(&["roundtrip", "--config", "fig3", "--eps-prime", "0.995", "--out", path(&dir.path().join("o"))]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn roundtrip_fig3_and_fig9() {
    let dir = tempfile::tempdir().unwrap();
    let out3 = dir.path().join("fig3");
    let o = smt(&["roundtrip", "--config", "fig3", "--out", path(&out3)]);
    assert!(o.status.success());
    let r = stdout_json(&o);
    assert!(rel_l2(&r, 0, 0) <= 1e-2);
    for f in ["data.csv", "truth.csv", "profile.csv", "plot.gp", "report.json"] {
        assert!(out3.join(f).exists(), "{f}");
    }
    let plot = fs::read_to_string(out3.join("plot.gp")).unwrap();
    assert!(plot.contains("'truth.csv'") && plot.contains("'profile.csv'"));

    let out9 = dir.path().join("fig9");
    let o = smt(&["roundtrip", "--config", "fig9", "--out", path(&out9)]);
    let r = stdout_json(&o);
    assert!(rel_l2(&r, 0, 0) <= 5e-2);
    assert_eq!(r["data"]["noise"]["amplitude"], 1e-7);
    assert_eq!(r["profiles"][0]["near_origin"]["degraded"], true);
}

#[test]
fn roundtrip_is_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let mut reports = Vec::new();
    let mut files = Vec::new();
    for _ in 0..2 {
        let o = smt(&["roundtrip", "--config", "fig9", "--out", path(&out)]);
        let mut r = stdout_json(&o);
        r["timing"] = Value::Null;
        reports.push(r);
        files.push(["data.csv", "profile.csv", "truth.csv", "plot.gp"].map(|f| fs::read(out.join(f)).unwrap()));
    }
    assert_eq!(reports[0], reports[1]);
    assert_eq!(files[0], files[1]);
}

#[test]
fn full_sphere_simulate_then_invert() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("modes.toml");
    fs::write(
        &cfg,
        r#"
name = "small-modes"
kind = "modes"
q_max = 1
[phantom]
id = "two-mode"
freq = 20.0
[grid]
t_min = 0.01
t_max = 0.99
nodes = 120
[sphere]
centers_polar = 3
centers_azimuth = 5
rule_polar = 48
rule_azimuth = 6
[report]
intervals = [[0.2, 0.9]]
"#,
    )
    .unwrap();
    let out = dir.path().join("o");
    assert!(smt(&["simulate", "--config", path(&cfg), "--out", path(&out)]).status.success());
    let text = fs::read_to_string(out.join("data.csv")).unwrap();
    assert!(text.starts_with("theta,phi,t,value\n"));
    assert_eq!(text.lines().count(), 1 + 15 * 120);
    let o = smt(&["invert", "--config", path(&cfg), "--data", path(&out.join("data.csv")), "--out", path(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = stdout_json(&o);
    let profiles = r["profiles"].as_array().unwrap();
    assert_eq!(profiles.len(), 4);
    for p in profiles {
        let m = &p["metrics"][0];
        match m["rel_l2"].as_f64() {
            Some(e) => assert!(e < 1e-2, "{p}"),
            None => assert!(m["abs_l2"].as_f64().unwrap() < 1e-6, "{p}"),
        }
    }
    assert!(out.join("profile_q1_s2.csv").exists());
}

#[test]
fn identities_command() {
    let o = smt(&["identities", "--max-k", "0", "--max-q", "0"]);
    assert!(o.status.success());
    let r = stdout_json(&o);
    assert_eq!(r["numeric"].as_array().unwrap().len(), 0);
    assert_eq!(r["passed"], true);

    let dir = tempfile::tempdir().unwrap();
    let o = smt(&["identities", "--max-k", "2", "--max-q", "1", "--out", path(dir.path())]);
    assert!(o.status.success());
    let r = stdout_json(&o);
    assert_eq!(r["numeric_passed"], true);
    assert!(r["numeric"].as_array().unwrap().iter().any(|c| c["identity"] == "D2k-h_k"));
    assert!(dir.path().join("identities.json").exists());
}

/// a_m(t) = prefactor · Σ_{n,l} c_{m,n,l} (1−t)^{n+1} / t^{l+n−m}, from the JSON dump.
fn coefficient(v: &Value, prefactor: f64, m: u64, t: f64) -> f64 {
    v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["m"] == m)
        .map(|e| {
            let c = e["num"].as_str().unwrap().parse::<f64>().unwrap() / e["den"].as_str().unwrap().parse::<f64>().unwrap();
            let (n, l) = (e["n"].as_u64().unwrap() as i32, e["l"].as_u64().unwrap() as i32);
            prefactor * c * (1.0 - t).powi(n + 1) / t.powi(l + n - m as i32)
        })
        .sum()
}

fn parse_rational(s: &str) -> f64 {
    match s.split_once('/') {
        Some((a, b)) => a.parse::<f64>().unwrap() / b.parse::<f64>().unwrap(),
        None => s.parse().unwrap(),
    }
}

#[test]
fn coefficient_dumps() {
    let v = stdout_json(&smt(&["coeffs", "--dim", "3"]));
    let e = v["entries"].as_array().unwrap();
    assert_eq!(e.len(), 1);
    assert_eq!((e[0]["num"].as_str(), e[0]["den"].as_str()), (Some("1"), Some("1")));

    let v = stdout_json(&smt(&["coeffs", "--dim", "5"]));
    let pf = parse_rational(v["prefactor_radial"].as_str().unwrap());
    for t in [0.2f64, 0.5, 0.7] {
        let a1 = -8.0 * (1.0 - t) * (1.0 - t) / t;
        let a0 = -8.0 * (1.0 - t) * (1.0 + t + t * t) / (t * t);
        assert!((coefficient(&v, pf, 1, t) - a1).abs() < 1e-12 * a1.abs());
        assert!((coefficient(&v, pf, 0, t) - a0).abs() < 1e-12 * a0.abs());
    }

    let v = stdout_json(&smt(&["coeffs", "--dim", "7"]));
    let pf = parse_rational(v["prefactor_radial"].as_str().unwrap());
    for t in [0.2f64, 0.5, 0.7] {
        let a2 = 128.0 * (1.0 - t).powi(3) / (t * t);
        let a1 = 384.0 * (1.0 - t).powi(2) * (1.0 + t + t * t) / t.powi(3);
        let a0 = 384.0 * (1.0 - t.powi(5)) / t.powi(4);
        for (m, want) in [(2, a2), (1, a1), (0, a0)] {
            assert!((coefficient(&v, pf, m, t) - want).abs() < 1e-12 * want.abs(), "m={m} t={t}");
        }
    }
    assert_eq!(smt(&["coeffs", "--dim", "4"]).status.code(), Some(1));
}
