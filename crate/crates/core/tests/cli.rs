use std::path::Path;
use std::process::{Command, Output};

use approx::assert_abs_diff_eq;
use rabi_spectrum::io::parse_spectrum_csv;
use rabi_spectrum::Parity;
use serde_json::Value;

fn rabi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rabi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn spectrum_default_row_count() {
    let out = rabi(&["spectrum", "--lambda", "0.3"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_spectrum_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(rows.len(), 2 * 6 * 101);
    assert!(std::str::from_utf8(&out.stdout)
        .unwrap()
        .starts_with("g,parity,index,energy\n"));
}

#[test]
fn spectrum_uncoupled_levels() {
    let out = rabi(&["spectrum", "--lambda", "0.3", "--g", "0", "--levels", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_spectrum_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let plus: Vec<f64> = rows
        .iter()
        .filter(|r| r.parity == Parity::Plus)
        .map(|r| r.energy)
        .collect();
    let minus: Vec<f64> = rows
        .iter()
        .filter(|r| r.parity == Parity::Minus)
        .map(|r| r.energy)
        .collect();
    // + chain: |0,↑⟩, |1,↓⟩, |2,↑⟩ ; − chain: |0,↓⟩, |1,↑⟩, |2,↓⟩
    assert_eq!(plus, vec![0.3, 0.7, 2.3]);
    assert_eq!(minus, vec![-0.3, 1.3, 1.7]);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["spectrum", "--g-step", "0"][..],
        &["spectrum", "--g-start", "1", "--g-stop", "0.5"],
        &["spectrum", "--levels", "0"],
        &["compare", "--g-start", "2", "--g-stop", "1"],
        &[
            "classify", "--lambda", "0.3", "--g", "0.5", "--energy", "abc",
        ],
        &["classify", "--lambda", "0.3", "--g", "0.5"],
        &["frobnicate"],
    ] {
        let out = rabi(args);
        assert_eq!(out.status.code(), Some(64), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(rabi(&["--help"]).status.code(), Some(0));
}

#[test]
fn judd_showcase() {
    let out = rabi(&["judd", "--lambda", "0.5", "--g", "0.4330127019"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_abs_diff_eq!(v["energy"].as_f64().unwrap(), 0.8125, epsilon = 1e-12);
    assert!(v["nearest_zhang_distance"].as_f64().unwrap() > 0.01);
    for key in [
        "constraint_residual",
        "energy",
        "found_in_parity_plus",
        "found_in_parity_minus",
        "miller_defect",
        "nearest_zhang_distance",
        "ode_residual_max",
        "pass",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn judd_pythagorean_point() {
    let out = rabi(&["judd", "--lambda", "0.6", "--g", "0.4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_abs_diff_eq!(v["energy"].as_f64().unwrap(), 0.84, epsilon = 1e-12);
}

#[test]
fn judd_off_circle_exit_65() {
    let out = rabi(&["judd", "--lambda", "0.5", "--g", "0.5"]);
    assert_eq!(out.status.code(), Some(65));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("2.5e-1"), "{err}");
}

#[test]
fn classify_claimed_level_is_not_spectral() {
    // AJC n = 0, lower branch at λ = 0.3, g = 0.5
    let e = 1.0 * 0.5 - (0.8f64 * 0.8 + 0.25).sqrt();
    let out = rabi(&[
        "classify",
        "--lambda",
        "0.3",
        "--g",
        "0.5",
        "--energy",
        &e.to_string(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["class"], "non_spectral");
    assert_eq!(v["criteria_agree"], Value::Bool(true));
}

#[test]
fn classify_ground_state_is_spectral() {
    let out = rabi(&[
        "spectrum",
        "--lambda",
        "0.3",
        "--g",
        "0.5",
        "--levels",
        "1",
        "--rel-tol",
        "1e-12",
    ]);
    let rows = parse_spectrum_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let ground = rows.iter().map(|r| r.energy).fold(f64::INFINITY, f64::min);
    let out = rabi(&[
        "classify",
        "--lambda",
        "0.3",
        "--g",
        "0.5",
        "--energy",
        &ground.to_string(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["class"], "spectral");
    assert!(v["distance"].as_f64().unwrap() < 1e-10);

    let mid = (ground + 0.1).to_string();
    let out = rabi(&[
        "classify", "--lambda", "0.3", "--g", "0.5", "--energy", &mid,
    ]);
    assert_eq!(json(&out)["class"], "non_spectral");
}

fn compare_into(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["compare", "--g-step", "0.1", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    rabi(&args)
}

#[test]
fn compare_outputs_and_determinism() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(compare_into(a.path(), &[]).status.code(), Some(0));
    assert_eq!(compare_into(b.path(), &[]).status.code(), Some(0));
    let mut names: Vec<String> = std::fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "claimed_lambda0.3.csv",
            "claimed_lambda0.5.csv",
            "figure.svg",
            "metadata.json",
            "spectrum_lambda0.3.csv",
            "spectrum_lambda0.5.csv",
            "summary_lambda0.3.csv",
            "summary_lambda0.5.csv",
        ]
    );
    for n in &names {
        assert_eq!(
            std::fs::read(a.path().join(n)).unwrap(),
            std::fs::read(b.path().join(n)).unwrap(),
            "{n} differs between runs"
        );
    }
    let svg = std::fs::read_to_string(a.path().join("figure.svg")).unwrap();
    assert_eq!(svg.matches(r#"<g class="panel""#).count(), 4);
    let summary = std::fs::read_to_string(a.path().join("summary_lambda0.5.csv")).unwrap();
    let d: Vec<f64> = summary
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(d[0] < 1e-10);
    assert!(d[5] > 0.01);
}

#[test]
fn failed_run_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = compare_into(dir.path(), &["--rel-tol", "-1"]);
    assert_eq!(out.status.code(), Some(64));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# sweep\nlambda = 0.5\ng_start = 0\ng_stop = 0.2\ng_step = 0.1\nlevels = 2\n",
    )
    .unwrap();
    let out = rabi(&[
        "spectrum",
        "--config",
        cfg.to_str().unwrap(),
        "--levels",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_spectrum_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(rows.len(), 3 * 2 * 3);
    assert_eq!(rows[0].energy, 0.5);

    std::fs::write(&cfg, "nonsense = 1\n").unwrap();
    assert_eq!(
        rabi(&["spectrum", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn spectrum_file_with_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let out = rabi(&[
        "spectrum",
        "--g-stop",
        "0.1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(parse_spectrum_csv(&text).unwrap().len(), 2 * 6 * 11);
    let meta: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.csv.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["command"], "spectrum");
}

#[test]
fn budget_failure_exits_2() {
    // the starting cutoff 4·levels is already past the default cap
    let out = rabi(&["spectrum", "--g", "40", "--levels", "1100"]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("g = 40"));
}
