use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ttokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttokit"))
        .args(args)
        .env_remove("TTOKIT_QUAD_START")
        .output()
        .expect("binary runs")
}

fn generate(dir: &Path, kind: &str, count: usize, seed: u64) -> Output {
    ttokit(&[
        "generate",
        "--kind",
        kind,
        "--count",
        &count.to_string(),
        "--seed",
        &seed.to_string(),
        "--out",
        dir.to_str().unwrap(),
    ])
}

fn stdout_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn without_wall_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_s");
    v
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn generate_is_byte_identical_for_a_seed() {
    let (a, b, c) = (
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
    );
    assert!(generate(a.path(), "main", 10, 7).status.success());
    assert!(generate(b.path(), "main", 10, 7).status.success());
    assert!(generate(c.path(), "main", 10, 8).status.success());
    let (fa, fb, fc) = (
        read_dir_sorted(a.path()),
        read_dir_sorted(b.path()),
        read_dir_sorted(c.path()),
    );
    assert_eq!(fa.len(), 10);
    assert_eq!(fa, fb);
    assert_ne!(fa, fc);
}

#[test]
fn run_reports_every_kind_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    for kind in [
        "main",
        "inflation",
        "same_order",
        "block41",
        "block42",
        "thm51",
        "lemma52",
        "thm53",
        "equiv",
        "rank_one",
    ] {
        assert!(generate(dir.path(), kind, 2, 3).status.success(), "generate {kind}");
    }
    let out = ttokit(&["run", dir.path().to_str().unwrap(), "--jobs", "4"]);
    let reports = stdout_lines(&out);
    assert_eq!(reports.len(), 20);
    for r in &reports {
        assert_eq!(r["pass"], Value::Bool(true), "{r}");
        assert!(r["version"].is_string() && r["tolerance"].is_f64());
    }
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn run_output_is_deterministic_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "main", 4, 11);
    generate(dir.path(), "thm53", 3, 11);
    let path = dir.path().to_str().unwrap();
    let one: Vec<Value> = stdout_lines(&ttokit(&["run", path]))
        .into_iter()
        .map(without_wall_time)
        .collect();
    let four: Vec<Value> = stdout_lines(&ttokit(&["run", path, "--jobs", "4"]))
        .into_iter()
        .map(without_wall_time)
        .collect();
    assert_eq!(one.len(), 7);
    assert_eq!(one, four);
}

#[test]
fn tolerance_flag_decides_pass_and_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "inflation", 2, 5);
    let path = dir.path().to_str().unwrap();
    let strict = ttokit(&["run", path, "--tolerance", "1e-300"]);
    assert_eq!(strict.status.code(), Some(1));
    for r in stdout_lines(&strict) {
        assert_eq!(r["tolerance"].as_f64(), Some(1e-300));
        assert_eq!(r["pass"], Value::Bool(false));
    }
    assert_eq!(ttokit(&["run", path, "--tolerance", "1e-6"]).status.code(), Some(0));
}

#[test]
fn scenario_tolerance_overrides_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.json");
    std::fs::write(
        &file,
        r#"{"check": "inflation", "B": {"monomial": 2}, "Theta": {"monomial": 2},
            "phi": {"laurent": {"1": [1.0, 0.0]}}, "tolerance": 1e-6}"#,
    )
    .unwrap();
    let out = ttokit(&["run", file.to_str().unwrap(), "--tolerance", "1e-300"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out)[0]["tolerance"].as_f64(), Some(1e-6));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, r#"{"check": "main", "B": "#).unwrap();
    let out = ttokit(&["run", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    std::fs::write(&file, r#"{"check": "nonsense"}"#).unwrap();
    assert_eq!(ttokit(&["run", file.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        ttokit(&[
            "build-tto",
            "--theta",
            "{\"zeros\": [[2.0, 0.0]]}",
            "--phi",
            "{\"laurent\": {}}"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn failing_scenario_is_reported_not_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.json");
    // ψ = z² is outside K_{z²}
    std::fs::write(
        &file,
        r#"{"check": "thm51", "B": {"monomial": 2}, "psi": {"laurent": {"2": [1.0, 0.0]}}, "zeta": [1.0, 0.0], "n": 1}"#,
    )
    .unwrap();
    let out = ttokit(&["run", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = &stdout_lines(&out)[0];
    assert_eq!(r["pass"], Value::Bool(false));
    assert!(r["reason"].is_string());
}

#[test]
fn equiv_check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let jordan = write("j.json", "[[[0,0],[1,0]],[[0,0],[0,0]]]");
    let flipped = write("f.json", "[[[0,0],[0,0]],[[1,0],[0,0]]]");
    let zero = write("z.json", "[[[0,0],[0,0]],[[0,0],[0,0]]]");
    let out = ttokit(&["equiv-check", &jordan, &flipped]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out)[0]["verdict"], "equivalent");
    let out = ttokit(&["equiv-check", &jordan, &zero]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_lines(&out)[0]["verdict"], "inequivalent");
}

#[test]
fn build_tto_gives_the_shift_matrix() {
    let out = ttokit(&[
        "build-tto",
        "--theta",
        r#"{"monomial": 3}"#,
        "--phi",
        r#"{"laurent": {"1": [1.0, 0.0]}}"#,
    ]);
    assert!(out.status.success());
    let v = &stdout_lines(&out)[0];
    let m = v["matrix"].as_array().unwrap();
    for (i, row) in m.iter().enumerate() {
        for (j, entry) in row.as_array().unwrap().iter().enumerate() {
            let want = if i == j + 1 { 1.0 } else { 0.0 };
            assert!((entry[0].as_f64().unwrap() - want).abs() < 1e-12);
            assert!(entry[1].as_f64().unwrap().abs() < 1e-12);
        }
    }
}

#[test]
fn kernel_decompose_of_z_squared_on_z_cubed() {
    let out = ttokit(&[
        "kernel-decompose",
        "--theta",
        r#"{"monomial": 3}"#,
        "--phi",
        r#"{"laurent": {"2": [1.0, 0.0]}}"#,
    ]);
    assert!(out.status.success());
    let v = &stdout_lines(&out)[0];
    assert_eq!(v["kernel_dim"], 2);
    assert_eq!(v["u"]["zeros"].as_array().map(|z| z.len()), Some(1));
}

#[test]
fn quadrature_start_variable_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "main", 2, 13);
    let path = dir.path().to_str().unwrap();
    let default = ttokit(&["run", path]);
    let low = Command::new(env!("CARGO_BIN_EXE_ttokit"))
        .args(["run", path])
        .env("TTOKIT_QUAD_START", "16")
        .output()
        .unwrap();
    assert_eq!(low.status.code(), Some(0));
    for (a, b) in stdout_lines(&default).iter().zip(stdout_lines(&low)) {
        let (ra, rb) = (a["residual_rel"].as_f64().unwrap(), b["residual_rel"].as_f64().unwrap());
        assert!(ra < 1e-8 && rb < 1e-8);
    }
}
