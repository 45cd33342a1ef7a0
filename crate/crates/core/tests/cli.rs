use std::process::Command;

fn qmean(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qmean")).args(args).output().expect("run qmean");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn verify_ae_exits_zero() {
    let (code, out, _) = qmean(&["verify-ae", "--max-m", "16"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("max_tv"));
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"estimator": "subgauss", "distribution": "point:1", "grid": {"n": [8]}, "trials": 1, "seed": 1, "typo": 3}"#)
        .unwrap();
    let out = dir.path().join("o.csv");
    let (code, _, err) = qmean(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1, "{err}");
    assert_eq!(qmean(&["verify-ae", "--max-m", "64"]).0, 1);
    assert_eq!(qmean(&["bounds", "--instance", "nope:1:2", "--delta", "0.1"]).0, 1);
    assert_eq!(qmean(&["no-such-command"]).0, 1);
    assert_eq!(qmean(&["slope", "--in", "/nonexistent.csv"]).0, 1);
}

#[test]
fn sweep_summarize_slope_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(
        &cfg,
        r#"{"estimator": "median-of-means", "distribution": "bernoulli:0.3", "grid": {"n": [100, 1000, 10000], "delta": [0.1]}, "trials": 20, "seed": 4}"#,
    )
    .unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        let (code, _, err) = qmean(&["sweep", "--config", cfg.to_str().unwrap(), "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let (code, tsv, _) = qmean(&["summarize", "--in", a.to_str().unwrap(), "--bound", "auto"]);
    assert_eq!(code, 0);
    assert_eq!(tsv.lines().count(), 4);
    let (code, slope, _) = qmean(&["slope", "--in", a.to_str().unwrap(), "--x", "n", "--y", "abs_error", "--percentile", "90"]);
    assert_eq!(code, 0);
    let slope: f64 = slope.trim().parse().unwrap();
    assert!((-0.8..=-0.2).contains(&slope), "{slope}");
}

#[test]
fn bounds_and_calibrate() {
    let (code, out, _) = qmean(&["bounds", "--instance", "hard-statebased:10:1", "--delta", "0.01"]);
    assert_eq!(code, 0);
    assert!(out.contains("t_lower\t12"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.json");
    let (code, _, err) = qmean(&["calibrate", "--trials", "1000", "--seed", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let profile = qmean::estimators::ConstantProfile::load(&path).unwrap();
    assert!(profile.c > 0.0 && profile.c < 1.0);
}
