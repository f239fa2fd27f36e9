use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_convexmod"));
    c.env_remove("CONVEXMOD_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("convexmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn convexity_instance_is_equal() {
    let o = run(&["eq", "--semiring", "qplus", "--vars", "x,y", "x|y", "x|y|(1/2.x+1/2.y)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "equal\n");
}

#[test]
fn different_terms_report_a_witness() {
    let o = run(&["eq", "--vars", "x,y", "x", "y", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["equal"], false);
    assert_eq!(v["witness"]["in"], "left");
    assert_eq!(v["witness"]["generator"], serde_json::json!({"x": "1"}));
}

#[test]
fn eval_renders_an_interval() {
    let o = run(&["eval", "--semiring", "qplus", "--vars", "x", "2.x|5.x", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "interval");
    assert_eq!((v["lo"].as_str(), v["hi"].as_str()), (Some("2"), Some("5")));
}

#[test]
fn eval_reads_term_files_with_comments() {
    let path = scratch("terms.txt", "# two terms\nbot\n\n0 | 3.x  # a segment\n");
    let o = run(&["eval", "--vars", "x", "--file", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["empty"], true);
    assert_eq!((lines[1]["lo"].as_str(), lines[1]["hi"].as_str()), (Some("0"), Some("3")));
}

#[test]
fn render_emits_polygon_csv() {
    let o = run(&["render", "x1|x2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x1,x2\n1,0\n0,1\n");
    let o = run(&["render", "x1 | x2 | (x1 + 3.x2)", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "polygon");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn render_reads_a_convex_set() {
    let path = scratch(
        "set.json",
        r#"{"semiring": "qplus", "generators": [{"x": "1"}, {"x": "1/2"}, {"x": "3/4"}]}"#,
    );
    let o = run(&["render", "--file", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "interval: [1/2, 1]\n");
}

#[test]
fn weak_law_suite_over_bool_passes() {
    let o = run(&["laws", "--suite", "weakdist", "--semiring", "bool", "--xsize", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 4);
    let unit = reports.iter().find(|r| r["law"] == "unit-semimodule").unwrap();
    assert_eq!(unit["verdict"], "counterexample");
    assert_eq!(unit["expected"], "counterexample");
}

#[test]
fn every_suite_runs() {
    for (suite, sr) in [
        ("weakdist", "nat"),
        ("weakdist", "qplus"),
        ("pentagon", "bool"),
        ("pentagon", "qplus"),
        ("naturality", "qplus"),
        ("appendixA", "bool"),
        ("properties", "qplus"),
        ("properties", "bool"),
    ] {
        let o = run(&["laws", "--suite", suite, "--semiring", sr, "--trials", "20"]);
        assert_eq!(o.status.code(), Some(0), "{suite} over {sr}: {}", stdout(&o));
    }
}

#[test]
fn seeded_output_is_reproducible() {
    let args = ["laws", "--suite", "naturality", "--semiring", "qplus", "--trials", "30", "--seed", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let env = bin().args(&args[..args.len() - 2]).env("CONVEXMOD_SEED", "4").output().unwrap();
    assert_eq!(env.stdout, a.stdout);
    let other = bin().args(args).env("CONVEXMOD_SEED", "5").output().unwrap();
    assert!(stdout(&other).contains("seed 5"));
}

#[test]
fn delta_reads_weightings_from_stdin() {
    let phi = r#"{"weights": [{"set": ["x","y"], "value": "1"}, {"set": ["y","z"], "value": "2"}]}"#;
    let o = run_stdin(&["delta", "--format", "json"], phi);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["set"]["generators"].as_array().unwrap().len(), 4);

    let phi = r#"{"weights": [{"set": ["x","y"], "value": true}, {"set": ["y","z"], "value": true}]}"#;
    let o = run_stdin(&["delta", "--semiring", "bool", "--compare-bruteforce", "--format", "json"], phi);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bruteforce"]["agree"], true);

    let phi = r#"{"weights": [{"set": ["x","y"], "value": 2}]}"#;
    let o = run_stdin(&["delta", "--semiring", "nat", "--format", "json"], phi);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["eval", "x |"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", "--format", "json", "x |"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "syntax");
    let o = run(&["laws", "--suite", "weakdist", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", "--vars", "x", "y"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_stdin(&["delta", "--compare-bruteforce"], r#"{"weights": []}"#);
    assert_eq!(o.status.code(), Some(2));
}
