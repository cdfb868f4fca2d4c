//! Contract tests for the command-line interface: CSV headers, manifest
//! schema, deterministic re-runs, the compare gate, and exit codes.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ginevo"))
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn exact_csv_header_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("exact.csv");
    let status = bin()
        .args(["exact-two-time", "--n", "10", "--t", "1", "--tau", "0.1"])
        .args(["--y", "0", "--x-grid", "-1:1.1:0.5", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = read(&out);
    assert!(csv.starts_with("x,y,t,tau,n,value,quad_err\n"));
    // Inclusive start, exclusive stop: -1, -0.5, 0, 0.5, 1.
    assert_eq!(csv.lines().count(), 6);

    let manifest_path = dir.path().join("exact.csv.manifest.json");
    let manifest: serde_json::Value =
        serde_json::from_str(&read(&manifest_path)).unwrap();
    assert_eq!(manifest["schema"], 1);
    assert_eq!(manifest["command"], "exact-two-time");
    assert!(manifest["seed"].is_null());
    assert!(manifest["wall_secs"].is_number());
}

#[test]
fn values_round_trip_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("limit.csv");
    let status = bin()
        .args(["limit-two-time", "--t", "1", "--big-t", "1"])
        .args(["--x-grid", "0:2:0.25", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    for line in read(&out).lines().skip(1) {
        // Integer columns (like n) are written plainly; every float column
        // uses 17-significant-digit scientific notation, which must
        // round-trip bit-exactly.
        for field in line.split(',').filter(|f| f.contains('e')) {
            let v: f64 = field.parse().unwrap();
            assert_eq!(format!("{v:.16e}"), field);
        }
    }
}

#[test]
fn mc_rerun_is_byte_identical_and_seed_changes_output() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, seed_value: &str| {
        let out = dir.path().join(name);
        let status = bin()
            .args(["mc-counts", "--n", "15", "--t", "1"])
            .args(["--samples", "200", "--seed", seed_value, "--out"])
            .arg(&out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        std::fs::read(&out).unwrap()
    };
    let a = run("a.csv", "7");
    let b = run("b.csv", "7");
    let c = run("c.csv", "8");
    assert_eq!(a, b, "same seed must reproduce the file byte for byte");
    assert_ne!(a, c, "a different seed must change the estimates");
}

#[test]
fn seed_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let explicit = dir.path().join("flag.csv");
    let status = bin()
        .args(["mc-counts", "--n", "10", "--t", "1"])
        .args(["--samples", "100", "--seed", "42", "--out"])
        .arg(&explicit)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let via_env = dir.path().join("env.csv");
    let status = bin()
        .args(["mc-counts", "--n", "10", "--t", "1"])
        .args(["--samples", "100", "--out"])
        .arg(&via_env)
        .env("GINEVO_SEED", "42")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert_eq!(
        std::fs::read(&explicit).unwrap(),
        std::fs::read(&via_env).unwrap()
    );
}

#[test]
fn compare_gate_passes_and_fails() {
    let dir = tempfile::tempdir().unwrap();
    let exact = dir.path().join("exact.csv");
    let mc = dir.path().join("mc.csv");
    std::fs::write(
        &exact,
        "x,y,t,tau,n,value,quad_err\n\
         0e0,0e0,1e0,1e-1,10,1.0e0,1e-12\n\
         5e-1,0e0,1e0,1e-1,10,2.0e0,1e-12\n",
    )
    .unwrap();
    // Within 3 sigma of the exact values.
    std::fs::write(
        &mc,
        "x,y,t,tau,n,value,stderr\n\
         0e0,0e0,1e0,1e-1,10,1.05e0,5e-2\n\
         5e-1,0e0,1e0,1e-1,10,1.9e0,5e-2\n",
    )
    .unwrap();
    let status = bin()
        .args(["compare", "--exact"])
        .arg(&exact)
        .arg("--mc")
        .arg(&mc)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    // One point drifts to 19 sigma: the gate must fail with exit code 4.
    std::fs::write(
        &mc,
        "x,y,t,tau,n,value,stderr\n\
         0e0,0e0,1e0,1e-1,10,1.95e0,5e-2\n\
         5e-1,0e0,1e0,1e-1,10,1.9e0,5e-2\n",
    )
    .unwrap();
    let status = bin()
        .args(["compare", "--exact"])
        .arg(&exact)
        .arg("--mc")
        .arg(&mc)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));
}

#[test]
fn invalid_arguments_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.csv");
    // Malformed grid.
    let status = bin()
        .args(["exact-two-time", "--n", "10", "--t", "1", "--tau", "0.1"])
        .args(["--y", "0", "--x-grid", "nonsense", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    // Dimension below the closed form's range.
    let status = bin()
        .args(["exact-two-time", "--n", "2", "--t", "1", "--tau", "0.1"])
        .args(["--y", "0", "--x-grid", "0:1:0.5", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    // Odd point count for a Pfaffian law.
    let status = bin()
        .args(["fixed-time-pfaffian", "--points", "0.0,0.5,1.0", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn help_exits_zero() {
    let status = bin().arg("--help").status().unwrap();
    assert_eq!(status.code(), Some(0));
}
