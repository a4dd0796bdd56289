use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bowditch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bowditch"))
        .args(args)
        .env_remove("BOWDITCH_WORKERS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn parse_c(v: &Value) -> (f64, f64) {
    let s = v.as_str().unwrap();
    let (re, im) = s.split_once(',').unwrap();
    (re.parse().unwrap(), im.parse().unwrap())
}

#[test]
fn zero_character_has_a_real_witness() {
    let out = bowditch(&["classify", "--x", "0,0", "--y", "0,0", "--z", "0,0"]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "NotBQ");
    assert_eq!(v["witness"]["kind"], "RealTrace");
}

#[test]
fn markov_triple_is_bq() {
    let out = bowditch(&["classify", "--x", "3,0", "--y", "3,0", "--z", "3,0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["verdict"], "BQ");
}

#[test]
fn off_variety_triple_is_rejected() {
    let out = bowditch(&["classify", "--x", "3,0", "--y", "3,0", "--z", "5,0"]);
    assert_eq!(code(&out), 65);
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors() {
    let out = bowditch(&["classify", "--x", "3,0", "--y", "3,0", "--threshold", "0.9"]);
    assert_eq!(code(&out), 64);
    assert_eq!(code(&bowditch(&["classify", "--x", "nope", "--y", "0,0"])), 64);
    assert_eq!(code(&bowditch(&["frobnicate"])), 64);
    assert_eq!(code(&bowditch(&["--help"])), 0);
    assert_eq!(code(&bowditch(&["--version"])), 0);
}

#[test]
fn negative_parts_parse() {
    let out = bowditch(&["classify", "--x", "-3,0", "--y", "-3,0", "--z", "3,0", "--branch", "plus"]);
    // --z and --branch conflict
    assert_eq!(code(&out), 64);
    let out = bowditch(&["classify", "--x", "-3,0", "--y", "-3,0", "--z", "3,0"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn with_reduction_finds_small_trace() {
    let out = bowditch(&["classify", "--x", "2.2,0.3", "--y", "0.1,0.2", "--with-reduction"]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["witness"]["kind"], "SmallTrace");
    assert_eq!(v["triangles_visited"], 0);
}

#[test]
fn reduce_exit_codes() {
    let out = bowditch(&["reduce", "--x", "0,0", "--y", "0,0", "--z", "0,0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["status"], "ReachedRealInterval");

    let out = bowditch(&["reduce", "--x", "3,0", "--y", "3,0", "--z", "3,0"]);
    assert_eq!(code(&out), 3);
    assert_eq!(stdout_json(&out)["status"], "NoDecrease");

    let out = bowditch(&["reduce", "--x", "3,0", "--y", "3,0", "--z", "5,0"]);
    assert_eq!(code(&out), 65);
}

#[test]
fn lift_reproduces_traces() {
    let out = bowditch(&["lift", "--x", "3,0", "--y", "3,0", "--z", "6,0"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    for (_, r) in v["residuals"].as_object().unwrap() {
        assert!(r.as_f64().unwrap() < 1e-8);
    }
    assert_eq!(v["mx"].as_array().unwrap().len(), 2);
}

#[test]
fn lift_of_zero_character_has_commutator_minus_two() {
    let out = bowditch(&["lift", "--x", "0,0", "--y", "0,0", "--z", "0,0"]);
    assert_eq!(code(&out), 0);
    let (re, im) = parse_c(&stdout_json(&out)["commutator_trace"]);
    assert!((re + 2.0).abs() < 1e-8 && im.abs() < 1e-8);
}

#[test]
fn lift_rejects_parabolic_x() {
    assert_eq!(code(&bowditch(&["lift", "--x", "2,0", "--y", "3,0"])), 3);
}

#[test]
fn metadata_goes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let md = dir.path().join("md.json");
    let out = bowditch(&["classify", "--x", "3,0", "--y", "3,0", "--z", "3,0", "--metadata", md.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stderr.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(md).unwrap()).unwrap();
    assert_eq!(v["command"], "classify");
    assert_eq!(v["config"]["budget"], 10_000);
    assert_eq!(v["config"]["z"], "3,0");
}

fn scan_1x1(dir: &Path) -> Vec<u8> {
    let ppm = dir.join("q.ppm");
    let out = bowditch(&[
        "scan", "--fixed", "x", "--fixed-value", "0,0", "--varied", "y", "--center", "0,0",
        "--width", "0.1", "--height", "0.1", "--nx", "1", "--ny", "1", "--branch", "plus",
        "--out-ppm", ppm.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    std::fs::read(ppm).unwrap()
}

#[test]
fn quaternionic_cell_is_gray() {
    let dir = tempfile::tempdir().unwrap();
    let bytes = scan_1x1(dir.path());
    assert!(bytes.starts_with(b"P6\n1 1\n255\n"));
    assert_eq!(&bytes[bytes.len() - 3..], &[96, 96, 96]);
}

#[test]
fn scans_are_deterministic_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let run = |workers: &str, tag: &str| {
        let ppm = dir.path().join(format!("{tag}.ppm"));
        let csv = dir.path().join(format!("{tag}.csv"));
        let out = Command::new(env!("CARGO_BIN_EXE_bowditch"))
            .args([
                "scan", "--fixed-value", "2.2,0.3", "--nx", "24", "--ny", "16", "--branch", "both",
                "--budget", "2000", "--out-ppm", ppm.to_str().unwrap(), "--out-csv", csv.to_str().unwrap(),
            ])
            .env("BOWDITCH_WORKERS", workers)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let plus = std::fs::read(dir.path().join(format!("{tag}_plus.ppm"))).unwrap();
        let minus = std::fs::read(dir.path().join(format!("{tag}_minus.ppm"))).unwrap();
        (plus, minus, std::fs::read(csv).unwrap())
    };
    let a = run("1", "a");
    let b = run("3", "b");
    assert_eq!(a, b);
    let csv = String::from_utf8(a.2).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "re,im,branch,verdict,witness_kind,low_trace_count,budget_spent");
    assert_eq!(csv.lines().count(), 1 + 2 * 24 * 16);
}

#[test]
fn scan_spec_file_and_bad_paths() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"fixed_coordinate":"X","fixed_value":"3,0","varied_coordinate":"Y",
            "grid":{"center":"0,0","width":4.0,"height":4.0,"nx":4,"ny":4},
            "branch":"Plus","threshold":0.5,"budget":1000}"#,
    )
    .unwrap();
    let ppm = dir.path().join("s.ppm");
    let out = bowditch(&["scan", "--spec", spec.to_str().unwrap(), "--out-ppm", ppm.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read(&ppm).unwrap().len(), 11 + 4 * 4 * 3);

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&bowditch(&["scan", "--spec", missing.to_str().unwrap()])), 66);
    let unwritable = dir.path().join("no/such/dir/x.ppm");
    assert_eq!(
        code(&bowditch(&["scan", "--spec", spec.to_str().unwrap(), "--out-ppm", unwritable.to_str().unwrap()])),
        66
    );
    std::fs::write(&spec, "{not json").unwrap();
    assert_eq!(code(&bowditch(&["scan", "--spec", spec.to_str().unwrap()])), 64);
    assert_eq!(code(&bowditch(&["scan", "--nx", "0"])), 64);
}

#[test]
fn experiment_is_reproducible() {
    let a = bowditch(&["experiment", "--samples", "50", "--seed", "9"]);
    let b = bowditch(&["experiment", "--samples", "50", "--seed", "9"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["samples"], 50);
}
