//! End-to-end runs of the `betaens` binary.

use std::path::Path;
use std::process::{Command, Output};

fn betaens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betaens")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eval_closed_forms() {
    assert_eq!(stdout(&betaens(&["eval", "partition", "--n", "2", "--beta", "2"])).trim(), "2");
    let o = betaens(&["eval", "charpoly", "--n", "1", "--beta", "2", "--a", "0", "--b", "1"]);
    assert_eq!(stdout(&o).trim(), "x - 0.666666666666667");
    let o = betaens(&["eval", "selberg", "--n", "1", "--x", "2", "--y", "3", "--z", "0"]);
    assert_eq!(stdout(&o).trim(), "0.0833333333333333");
    let o = betaens(&["eval", "dirichlet", "--p", "1,1"]);
    assert_eq!(stdout(&o).trim(), "0.166666666666667");
}

#[test]
fn domain_errors_name_the_flag() {
    let o = betaens(&["eval", "partition", "--n", "2", "--beta", "-1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--beta"));
    let o = betaens(&["sample", "jacobi", "--n", "2", "--beta", "2", "--a", "-1.5", "--out", "/dev/null"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--a"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&betaens(&["validate", "nonsense"])), 2);
    assert_eq!(code(&betaens(&["sample", "gaussian", "--n", "2", "--beta", "1"])), 2);
    assert_eq!(code(&betaens(&["sample", "circular", "--beta", "1"])), 2);
    assert_eq!(code(&betaens(&["validate", "integrals", "--tol", "nope=1"])), 2);
}

#[test]
fn sample_is_byte_identical_under_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    for fmt in ["csv", "jsonl"] {
        let a = dir.path().join(format!("a.{fmt}"));
        let b = dir.path().join(format!("b.{fmt}"));
        for p in [&a, &b] {
            let o = betaens(&[
                "sample", "jacobi", "--n", "4", "--beta", "1.5", "--a", "0.5", "--b", "-0.25", "--count", "200", "--seed",
                "42", "--emit-alphas", "--format", fmt, "--out", path_str(p),
            ]);
            assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
    let c = dir.path().join("c.csv");
    betaens(&["sample", "jacobi", "--n", "4", "--beta", "1.5", "--a", "0.5", "--b", "-0.25", "--count", "200", "--seed", "43", "--emit-alphas", "--out", path_str(&c)]);
    assert_ne!(std::fs::read(dir.path().join("a.csv")).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn jacobi_samples_stay_in_interval() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("j.csv");
    let o = betaens(&["sample", "jacobi", "--n", "2", "--beta", "2", "--a", "0", "--b", "0", "--count", "1000", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1000 draws"));
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 1000);
    for r in rows {
        for x in r.split(',').skip(1) {
            let x: f64 = x.parse().unwrap();
            assert!(x.abs() <= 2.0);
        }
    }
}

#[test]
fn default_output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_betaens"))
        .args(["sample", "circular", "--n", "3", "--beta", "2", "--count", "10", "--seed", "5"])
        .env("BETAENS_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(dir.path().join("circular_n3_seed5_stream0.csv").exists());
}

#[test]
fn histogram_of_gaps_is_normalised() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("c.jsonl");
    let h = dir.path().join("h.csv");
    let o = betaens(&["sample", "circular", "--n", "20", "--beta", "2", "--count", "300", "--format", "jsonl", "--out", path_str(&s)]);
    assert_eq!(code(&o), 0);
    let o = betaens(&["hist", path_str(&s), "--stat", "gap", "--bins", "40", "--out", path_str(&h)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&h).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "bin_left,bin_right,count,density");
    let mut total = 0.0;
    let mut count = 0u64;
    for l in lines {
        let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
        total += f[3] * (f[1] - f[0]);
        count += f[2] as u64;
    }
    assert!((total - 1.0).abs() < 1e-12);
    assert_eq!(count, 300 * 20);
}

#[test]
fn flat_single_angle_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("c.csv");
    betaens(&["sample", "circular", "--n", "1", "--beta", "2", "--count", "16000", "--out", path_str(&s)]);
    let o = betaens(&["hist", path_str(&s), "--stat", "angle", "--bins", "8"]);
    assert_eq!(code(&o), 0);
    let se = (16000.0f64 * 0.125 * 0.875).sqrt();
    for l in stdout(&o).lines().skip(1) {
        let c: f64 = l.split(',').nth(2).unwrap().parse().unwrap();
        assert!((c - 2000.0).abs() < 4.0 * se, "{l}");
    }
}

#[test]
fn io_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "not,a,batch\n1,2,3\n").unwrap();
    assert_eq!(code(&betaens(&["hist", path_str(&bad)])), 3);
    assert_eq!(code(&betaens(&["hist", path_str(&dir.path().join("missing.csv"))])), 3);
    let blocked = dir.path().join("file");
    std::fs::write(&blocked, "").unwrap();
    let o = betaens(&["sample", "circular", "--n", "2", "--beta", "1", "--count", "3", "--out", path_str(&blocked.join("x.csv"))]);
    assert_eq!(code(&o), 3);
}

#[test]
fn validate_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("report.json");
    let o = betaens(&["validate", "integrals", "--out", path_str(&r)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&r).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["pass"], true);
    for c in report["checks"].as_array().unwrap() {
        assert!(!c["anchor"].as_str().unwrap().is_empty());
        assert!(c["measured"].is_number() && c["tolerance"].is_number());
    }
    // an impossible tolerance must fail the run and be recorded
    let o = betaens(&["validate", "integrals", "--tol", "selberg=1e-300"]);
    assert_eq!(code(&o), 1);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["tolerances"]["selberg"], 1e-300);
    assert_eq!(report["pass"], false);
}

#[test]
fn validate_ensembles_fast() {
    let o = betaens(&["validate", "ensembles", "--fast"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report["checks"].as_array().unwrap().len() >= 3);
}

#[test]
fn run_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.jsonl");
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        format!("command = \"sample\"\nkind = \"circular\"\nn = 3\nbeta = 4.0\ncount = 7\nseed = 9\nformat = \"jsonl\"\nout = {:?}\n", out.to_str().unwrap()),
    )
    .unwrap();
    let o = betaens(&["run", "--config", path_str(&cfg)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 7);

    std::fs::write(&cfg, "command = \"sample\"\ncolour = \"blue\"\n").unwrap();
    assert_eq!(code(&betaens(&["run", "--config", path_str(&cfg)])), 2);
}
