//! End-to-end checks of the `porous` binary: spec resolution, exit
//! codes, output manifests, and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn porous(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_porous"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    let path = dir.join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

fn read_text(dir: &Path, name: &str) -> String {
    String::from_utf8(read(dir, name)).expect("utf-8 output")
}

#[test]
fn resolved_spec_is_a_fixed_point() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("run");
    let out_flag = out_dir.to_str().unwrap();
    let run = porous(&[
        "solve", "--grid", "128", "--t", "0.01", "--snapshots", "3", "--seed", "5", "--out",
        out_flag,
    ]);
    assert_exit(&run, 0);
    let first = read(&out_dir, "spec.resolved");

    // Echoed to stdout as well as written.
    assert_eq!(String::from_utf8_lossy(&run.stdout).as_bytes(), first);

    let config = tmp.path().join("echo.conf");
    std::fs::write(&config, &first).unwrap();
    let rerun = porous(&[
        "solve", "--config", config.to_str().unwrap(), "--out", out_flag, "--overwrite",
    ]);
    assert_exit(&rerun, 0);
    assert_eq!(read(&out_dir, "spec.resolved"), first);
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for name in ["a", "b"] {
        let dir = tmp.path().join(name);
        let run = porous(&[
            "simulate", "--n", "32", "--t", "0.02", "--seed", "11", "--snapshots", "4", "--out",
            dir.to_str().unwrap(),
        ]);
        assert_exit(&run, 0);
        outputs.push((
            read(&dir, "trajectory.csv"),
            read(&dir, "summary.csv"),
            read_text(&dir, "manifest.txt"),
        ));
    }
    assert_eq!(outputs[0].0, outputs[1].0);
    assert_eq!(outputs[0].1, outputs[1].1);
    // The output directory is not an experiment parameter, so the two
    // manifests agree in full, spec hash included.
    assert_eq!(outputs[0].2, outputs[1].2);
    assert!(outputs[0].2.lines().any(|l| l.ends_with("spec.resolved")));
    assert!(!outputs[0].2.contains("manifest.txt"), "manifest must not list itself");
}

#[test]
fn manifest_guards_completed_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("run");
    let args = ["regularize", "--grid", "64", "--eps", "0.1", "--out", dir.to_str().unwrap()];
    assert_exit(&porous(&args), 0);

    let blocked = porous(&args);
    assert_exit(&blocked, 1);
    assert!(stderr(&blocked).contains("manifest.txt"));

    let mut forced: Vec<&str> = args.to_vec();
    forced.push("--overwrite");
    assert_exit(&porous(&forced), 0);
    assert!(dir.join("manifest.txt").exists());
}

#[test]
fn unknown_key_is_named() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("bad.conf");
    std::fs::write(&config, "bogus = 3\n").unwrap();
    let run = porous(&[
        "solve", "--grid", "64", "--t", "0.01", "--config", config.to_str().unwrap(), "--out",
        tmp.path().join("run").to_str().unwrap(),
    ]);
    assert_exit(&run, 1);
    let msg = stderr(&run);
    assert!(msg.contains("bogus"), "{msg}");
    assert!(msg.contains("known keys"), "{msg}");
}

#[test]
fn flags_override_config() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("seeded.conf");
    std::fs::write(&config, "seed = 3\nn = 32\nt = 0.01\n").unwrap();
    let dir = tmp.path().join("run");
    let run = porous(&[
        "simulate", "--config", config.to_str().unwrap(), "--seed", "7", "--out",
        dir.to_str().unwrap(),
    ]);
    assert_exit(&run, 0);
    let spec = read_text(&dir, "spec.resolved");
    assert!(spec.contains("seed = 7"), "{spec}");
    assert!(spec.contains("n = 32"), "{spec}");
}

#[test]
fn validation_failures_exit_1() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let out = out.to_str().unwrap();

    let bad_m = porous(&["solve", "--grid", "64", "--t", "0.01", "--m", "1", "--out", out]);
    assert_exit(&bad_m, 1);
    assert!(stderr(&bad_m).contains("m >= 2"));

    let no_out = porous(&["solve", "--grid", "64", "--t", "0.01"]);
    assert_exit(&no_out, 1);
    assert!(stderr(&no_out).contains("`out`"));

    let both_eps = porous(&[
        "regularize", "--grid", "64", "--eps", "0.1", "--eps-rule", "default", "--n", "256",
        "--out", out,
    ]);
    assert_exit(&both_eps, 1);
    assert!(stderr(&both_eps).contains("exactly one"));

    // The default schedule sits exactly on the admissibility boundary
    // at ring size 128 and must be rejected, not clamped.
    let boundary = porous(&["regularize", "--grid", "64", "--eps-rule", "default", "--n", "128", "--out", out]);
    assert_exit(&boundary, 1);

    let bad_flag = porous(&["solve", "--grid", "64", "--t", "abc", "--out", out]);
    assert_exit(&bad_flag, 1);
    assert!(stderr(&bad_flag).contains("`t`"));
}

#[test]
fn runtime_failures_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let run = porous(&[
        "solve", "--grid", "64", "--t", "0.01", "--init", "file:/nonexistent/initial.csv",
        "--out", tmp.path().join("run").to_str().unwrap(),
    ]);
    assert_exit(&run, 2);
    // A failed run must not present itself as complete.
    assert!(!tmp.path().join("run").join("manifest.txt").exists());
}

#[test]
fn json_format_switches_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("run");
    let run = porous(&[
        "entropy-scan", "--sizes", "256,512", "--format", "json", "--out",
        dir.to_str().unwrap(),
    ]);
    assert_exit(&run, 0);
    let manifest = read_text(&dir, "manifest.txt");
    assert!(manifest.contains("rows.json"), "{manifest}");
    let rows: serde_json::Value =
        serde_json::from_str(&read_text(&dir, "rows.json")).expect("valid json");
    assert_eq!(rows.as_array().map(Vec::len), Some(2));
}

#[test]
fn replica_threads_do_not_change_bytes() {
    let tmp = tempfile::tempdir().unwrap();
    let mut tables = Vec::new();
    for (name, threads) in [("one", "1"), ("two", "2")] {
        let dir = tmp.path().join(name);
        let run = porous(&[
            "hydro-compare", "--t", "0.005", "--replicas", "4", "--sizes", "32", "--ell", "2",
            "--grid", "64", "--seed", "13", "--threads", threads, "--out",
            dir.to_str().unwrap(),
        ]);
        assert_exit(&run, 0);
        tables.push(read(&dir, "rows.csv"));
    }
    assert_eq!(tables[0], tables[1]);
}

#[test]
fn file_initials_feed_every_loader() {
    let tmp = tempfile::tempdir().unwrap();
    let profile = tmp.path().join("initial.csv");
    let mut body = String::from("u,rho\n");
    for j in 0..64 {
        let u = (j as f64 + 0.5) / 64.0;
        let rho = 0.3 + 0.1 * (std::f64::consts::TAU * u).sin();
        body.push_str(&format!("{u},{rho}\n"));
    }
    std::fs::write(&profile, body).unwrap();
    let init = format!("file:{}", profile.display());

    let solve_dir = tmp.path().join("solve");
    let run = porous(&[
        "solve", "--grid", "64", "--t", "0.005", "--snapshots", "2", "--init", &init, "--out",
        solve_dir.to_str().unwrap(),
    ]);
    assert_exit(&run, 0);
    let field = read_text(&solve_dir, "field.csv");
    let first_row = field.lines().nth(1).expect("data row");
    let rho0: f64 = first_row.rsplit(',').next().unwrap().parse().unwrap();
    let expected = 0.3 + 0.1 * (std::f64::consts::TAU * (0.5 / 64.0)).sin();
    assert!((rho0 - expected).abs() < 1e-12, "grid matches the file rows exactly");

    let hydro_dir = tmp.path().join("hydro");
    let run = porous(&[
        "hydro-compare", "--t", "0.002", "--replicas", "2", "--sizes", "32", "--ell", "2",
        "--grid", "64", "--init", &init, "--out", hydro_dir.to_str().unwrap(),
    ]);
    assert_exit(&run, 0);
}

#[test]
fn all_subcommands_complete_with_manifests() {
    let tmp = tempfile::tempdir().unwrap();
    let runs: &[(&str, Vec<&str>, &str)] = &[
        ("simulate", vec!["--n", "32", "--t", "0.01"], "trajectory.csv"),
        ("solve", vec!["--grid", "64", "--t", "0.005", "--snapshots", "2"], "field.csv"),
        ("regularize", vec!["--grid", "64", "--eps", "0.1"], "profiles.csv"),
        (
            "hydro-compare",
            vec!["--t", "0.002", "--replicas", "2", "--sizes", "32", "--ell", "2", "--grid", "64"],
            "rows.csv",
        ),
        ("entropy-scan", vec!["--sizes", "256"], "rows.csv"),
        (
            "diagnostics",
            vec!["--grid", "128", "--t", "0.005", "--snapshots", "2"],
            "bounds.csv",
        ),
    ];
    for (sub, extra, table) in runs {
        let dir = tmp.path().join(sub);
        let mut args = vec![*sub];
        args.extend(extra.iter().copied());
        args.extend(["--out", dir.to_str().unwrap()]);
        let run = porous(&args);
        assert_exit(&run, 0);
        let manifest = read_text(&dir, "manifest.txt");
        assert!(manifest.contains(table), "{sub}: {manifest}");
        assert!(manifest.contains("spec.resolved"), "{sub}: {manifest}");
    }
}
