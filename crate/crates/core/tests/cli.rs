use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use jalpha::cli::{run_file, Command, RunOptions};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

fn run_into(cmd: Command, file: &str, dir: &Path) -> i32 {
    let opts = RunOptions { out: Some(dir.to_path_buf()), ..RunOptions::default() };
    run_file(cmd, &scenario(file), &opts).unwrap().exit_code()
}

#[test]
fn reruns_are_byte_identical() {
    let cases = [
        (Command::Verify, "verify_homog_su2.json"),
        (Command::Curvature, "curvature_hyperbolic3.json"),
        (Command::Geodesic, "geodesic_hyperbolic3.json"),
        (Command::Curve, "curve_torus_elliptic.json"),
    ];
    for (cmd, file) in cases {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        assert_eq!(run_into(cmd, file, a.path()), run_into(cmd, file, b.path()));
        let (fa, fb) = (outputs(a.path()), outputs(b.path()));
        assert!(!fa.is_empty(), "{file} wrote nothing");
        assert_eq!(fa, fb, "{file} is not reproducible");
    }
}

#[test]
fn seed_override_changes_sample_points() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let path = scenario("verify_hyperbolic3.json");
    run_file(Command::Verify, &path, &RunOptions { out: Some(a.path().into()), seed: Some(1), ..Default::default() }).unwrap();
    run_file(Command::Verify, &path, &RunOptions { out: Some(b.path().into()), seed: Some(2), ..Default::default() }).unwrap();
    let read = |d: &Path| fs::read(d.join("verify_points.csv")).unwrap();
    assert_ne!(read(a.path()), read(b.path()));
}

#[test]
fn verdicts_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, file, code) in [
        (Command::Verify, "verify_hyperbolic3.json", 0),
        (Command::Verify, "verify_abelian2.json", 1),
        (Command::Verify, "verify_inline.json", 1),
        (Command::Curvature, "curvature_homog_su2.json", 0),
        (Command::Curve, "curve_torus_diagonal.json", 1),
        (Command::Curve, "curve_isotropic.json", 0),
    ] {
        assert_eq!(run_into(cmd, file, dir.path()), code, "{file}");
    }
}

#[test]
fn binary_reports_usage_and_schema_errors() {
    let bin = env!("CARGO_BIN_EXE_jalpha");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"model": "hyperbolic3", "colour": "blue"}"#).unwrap();
    let status = |args: &[&str]| Process::new(bin).args(args).env("JALPHA_LOG", "off").output().unwrap().status.code();
    let out = dir.path().to_str().unwrap();
    assert_eq!(status(&["verify", "--scenario", bad.to_str().unwrap(), "--out", out]), Some(2));
    assert_eq!(status(&["verify", "--scenario", "/nonexistent.json", "--out", out]), Some(2));
    assert_eq!(status(&["frobnicate"]), Some(2));
    let ok = scenario("verify_hyperbolic3.json");
    assert_eq!(status(&["verify", "--scenario", ok.to_str().unwrap(), "--out", out, "--points", "5"]), Some(0));
    assert!(dir.path().join("verify.json").exists());
    let fail = scenario("verify_abelian2.json");
    assert_eq!(status(&["verify", "--scenario", fail.to_str().unwrap(), "--out", out]), Some(1));
}

#[test]
fn zero_geodesic_velocity_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("zero.json");
    fs::write(&file, r#"{"model": "hyperbolic3", "geodesic": {"initial": [{"x": [0, 0, 1], "v": [0, 0, 0]}]}}"#).unwrap();
    let err = run_file(Command::Geodesic, &file, &RunOptions::default()).unwrap_err();
    assert_eq!(err.code, 2);
}
