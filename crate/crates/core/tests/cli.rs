use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nablafrac")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn cube_csv(dir: &Path) -> PathBuf {
    let body: String = std::iter::once("t,value\n".to_string())
        .chain((-2..=6).map(|t: i64| format!("{t},{}\n", t * t * t)))
        .collect();
    write(dir, "cube.csv", &body)
}

#[test]
fn eval_sum_exact_and_float() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "one.csv", "t,value\n0,1\n1,1\n2,1\n");
    let f = f.to_str().unwrap();
    let exact = run(&["eval-sum", "--input", f, "--a", "0", "--nu", "1/2", "--t", "2"]);
    assert_eq!(exact.status.code(), Some(0));
    assert_eq!(stdout(&exact).trim(), "15/8");
    let float = run(&["eval-sum", "--input", f, "--a", "0", "--nu", "1/2", "--t", "2", "--backend", "float"]);
    assert_eq!(stdout(&float).trim(), "1.875");
}

#[test]
fn eval_sum_series_as_csv_reads_back() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "one.json", r#"{"lo": 0, "values": [1, 1, 1]}"#);
    let out = dir.path().join("sum.csv");
    let o = run(&[
        "eval-sum",
        "--input",
        f.to_str().unwrap(),
        "--nu",
        "0.5",
        "--format",
        "csv",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(out).unwrap(), "t,value\n0,1\n1,3/2\n2,15/8\n");
}

#[test]
fn caputo_taylor_and_bound_anchors() {
    let dir = TempDir::new().unwrap();
    let f = cube_csv(dir.path());
    let f = f.to_str().unwrap();
    let caputo = run(&["eval-caputo", "--input", f, "--a", "1", "--mu", "5/2", "--t", "3"]);
    assert_eq!(stdout(&caputo).trim(), "45/4");

    let taylor = run(&["taylor", "--input", f, "--a", "0", "--mu", "5/2", "--t", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&taylor.stdout).unwrap();
    assert_eq!(v["remainder"], "60");
    assert_eq!(v["defect"], "0");

    let bound = run(&["bound", "--input", f, "--a", "0", "--mu", "5/2", "--t", "3", "--format", "json"]);
    assert_eq!(bound.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&bound.stdout).unwrap();
    assert_eq!(v["rhs"], "2835/32");
    assert_eq!(v["holds"], true);
}

#[test]
fn integer_order_is_a_usage_error_for_caputo() {
    let dir = TempDir::new().unwrap();
    let f = cube_csv(dir.path());
    let o = run(&["eval-caputo", "--input", f.to_str().unwrap(), "--mu", "2", "--t", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-integer"));
}

#[test]
fn integer_taylor_form() {
    let dir = TempDir::new().unwrap();
    let f = cube_csv(dir.path());
    let o = run(&["taylor", "--input", f.to_str().unwrap(), "--a", "0", "--mu", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",0")), "{}", stdout(&o));
}

#[test]
fn malformed_grid_exits_two() {
    let dir = TempDir::new().unwrap();
    let gap = write(dir.path(), "gap.csv", "t,value\n0,1\n2,1\n");
    let o = run(&["eval-sum", "--input", gap.to_str().unwrap(), "--nu", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("index 1 is missing"));
    assert_eq!(run(&["eval-sum", "--nu", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_suites_exit_codes() {
    let ok = run(&["verify", "taylor", "--trials", "10", "--seed", "5", "--format", "json"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["suite"], "taylor");
    assert_eq!(v["trials"], 10);
    assert_eq!(v["master_seed"], 5);
    assert_eq!(v["backend"], "exact");
    assert!(v["version"].is_string());

    // The tight variant has known counterexamples within the first few hundred trials.
    let tight = run(&["ineq", "opial", "--trials", "400", "--g-variant", "tight", "--format", "json"]);
    assert_eq!(tight.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&tight.stdout).unwrap();
    let seed = v["failing_seeds"][0].as_u64().unwrap().to_string();
    let replay = run(&["ineq", "opial", "--g-variant", "tight", "--trial-seed", &seed, "--format", "json"]);
    assert_eq!(replay.status.code(), Some(1));

    let paper = run(&["ineq", "opial", "--trials", "400", "--format", "json"]);
    assert_eq!(paper.status.code(), Some(0));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "sobolev", "--trials", "40", "--seed", "9", "--r", "1,3", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn ineq_on_input_file() {
    let dir = TempDir::new().unwrap();
    // f = (0, 0, 0, 3, 1, -2, 4, 0) on [-2, 5] meets f(0)=f(-1)=f(-2)=0.
    let f = write(dir.path(), "f.csv", "t,value\n-2,0\n-1,0\n0,0\n1,3\n2,1\n3,-2\n4,4\n5,0\n");
    let f = f.to_str().unwrap();
    let o = run(&["ineq", "opial-25", "--input", f, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["name"], "opial-25");
    assert_eq!(v["components"]["g_bar_1"], "9");

    for name in ["opial", "ostrowski", "poincare", "sobolev"] {
        let o = run(&["ineq", name, "--input", f, "--a", "0", "--mu", "5/2"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = run(&["ineq", "avg-sobolev", "--input", f, "--a", "0", "--mu-list", "3/2,5/2", "--r", "2,4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    // ∇f(0) = 1 violates the Ostrowski boundary conditions.
    let bad = write(dir.path(), "bad.csv", "t,value\n-2,0\n-1,0\n0,1\n1,3\n2,1\n3,-2\n4,4\n5,0\n");
    let o = run(&["ineq", "ostrowski", "--input", bad.to_str().unwrap(), "--a", "0", "--mu", "5/2"]);
    assert_eq!(o.status.code(), Some(2));
}
