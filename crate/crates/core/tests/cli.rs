//! End-to-end runs of the command-line binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_matroid-cc"));
    cmd.env_remove("MATROID_CACHE");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn compute_examples() {
    let o = run(&["compute", "--uniform", "2,3", "--which", "m"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = &records(&o)[0];
    assert_eq!(r["m"], "1");
    assert!(r.get("klPoly").is_none());

    let o = run(&["compute", "--uniform", "3,4", "--which", "kl"]);
    assert_eq!(records(&o)[0]["klPoly"], serde_json::json!(["1", "2"]));

    let o = run(&["compute", "--boolean", "2", "--which", "all"]);
    let r = &records(&o)[0];
    assert_eq!(
        (r["m"].as_str(), r["c"].as_str(), r["eu"].as_str()),
        (Some("0"), Some("-1"), Some("1"))
    );
    assert_eq!(r["flags"]["ccIrreducible"], true);
    assert_eq!(r["mFunction"]["{}"], "0");
    assert_eq!(r["euFunction"]["{0,1}"], "1");

    let o = run(&["compute", "--fano", "--which", "eu"]);
    assert_eq!(records(&o)[0]["eu"], "0");
}

#[test]
fn records_follow_input_order() {
    let o = run(&[
        "compute",
        "--uniform",
        "3,4",
        "--uniform",
        "1,1",
        "--boolean",
        "3",
        "--which",
        "m",
        "--jobs",
        "3",
    ]);
    let ms: Vec<String> = records(&o)
        .iter()
        .map(|r| r["m"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ms, ["2", "0", "0"]);
}

#[test]
fn csv_output() {
    let o = run(&[
        "compute",
        "--uniform",
        "2,4",
        "--which",
        "m,eu",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("key,n,rank"));
    assert!(lines[1].starts_with("4:2:******,4,2,"));
    assert!(lines[1].contains(",-1,,2,"), "{}", lines[1]);
}

#[test]
fn exit_codes() {
    let o = run(&["compute", "--uniform", "x"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["compute", "--uniform", "2,3", "--which", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["compute", "--bogus-flag"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.jsonl");
    std::fs::write(&input, "{\"uniform\":[1,1]}\n{\"n\":2,\"bases\":[[0]]}\n").unwrap();
    let o = run(&["compute", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("input 1"), "{}", stderr(&o));

    std::fs::write(&input, "{\"n\":2,\"bases\":[[0],[0,1]]}\n").unwrap();
    let o = run(&["compute", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let o = run(&[
        "verify",
        "--enumerate",
        "5",
        "--checks",
        "routes,identityA,identityB",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("21 of 21 inputs passed"));
    let o = run(&["verify", "--enumerate", "1..5", "--checks", "all"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("37 of 37 inputs passed"));
    let o = run(&["verify", "--fano", "--checks", "routes"]);
    assert!(o.status.success());
    let o = run(&["verify", "--vamos", "--checks", "identityB"]);
    assert!(o.status.success());
}

fn sweep(args: &[&str], dir: &Path) -> (Output, String, Value) {
    let out = dir.join("records.jsonl");
    let report = dir.join("report.json");
    let mut full = vec![
        "sweep",
        "--out",
        out.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ];
    full.extend_from_slice(args);
    let o = run(&full);
    let lines = std::fs::read_to_string(&out).unwrap_or_default();
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap_or("null".into())).unwrap();
    (o, lines, report)
}

#[test]
fn sweep_two_elements() {
    let dir = tempfile::tempdir().unwrap();
    let (o, lines, report) = sweep(&["--enumerate", "2"], dir.path());
    assert!(o.status.success());
    assert_eq!(lines.lines().count(), 2);
    assert_eq!(report["zeros"], serde_json::json!(["2:1:**", "2:2:*"]));
    assert_eq!(report["violations"], serde_json::json!([]));
    let mismatches = report["interpretationMismatches"].as_array().unwrap();
    assert_eq!(mismatches.len(), 1);
    assert_eq!(mismatches[0]["key"], "2:1:**");
    assert_eq!(mismatches[0]["reading"], "coloop");
}

#[test]
fn sweep_builtins_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let (o, first, report) = sweep(&["--catalog", "builtins", "--jobs", "2"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let zeros: Vec<&str> = report["zeros"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    for d in 1..=4 {
        let key = format!("{d}:{d}:*");
        assert!(zeros.contains(&key.as_str()), "{key}");
    }
    let (_, second, _) = sweep(&["--catalog", "builtins", "--jobs", "1"], dir.path());
    assert_eq!(first, second);
}

#[test]
fn negative_m_exits_4() {
    // a tampered cache entry stands in for a counterexample
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let o = bin()
        .args(["compute", "--uniform", "2,3", "--which", "m"])
        .env("MATROID_CACHE", &cache)
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(text.lines().count(), 1);
    std::fs::write(&cache, text.replace("\"m\":\"1\"", "\"m\":\"-1\"")).unwrap();
    let o = bin()
        .args([
            "sweep",
            "--uniform",
            "2,3",
            "--out",
            dir.path().join("o.jsonl").to_str().unwrap(),
        ])
        .env("MATROID_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("3:2:***"));
}

#[test]
fn cache_flag_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let flag = dir.path().join("flag.jsonl");
    let env = dir.path().join("env.jsonl");
    let args = [
        "compute",
        "--uniform",
        "3,5",
        "--cache",
        flag.to_str().unwrap(),
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(flag.exists());
    let o = bin()
        .args(args)
        .env("MATROID_CACHE", &env)
        .output()
        .unwrap();
    assert_eq!(stdout(&o), stdout(&a));
    assert!(env.exists());
}

#[test]
fn catalog_and_canonicalize() {
    let o = run(&["catalog", "list", "--fano", "--builtin", "graphic(K4)"]);
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["name"], "graphic(K4)");
    assert_eq!(lines[1]["name"], "fano");
    assert!(lines[1]["tags"]
        .as_array()
        .unwrap()
        .contains(&Value::from("non-realizable")));
    assert_eq!(lines[1]["bases"].as_array().unwrap().len(), 28);

    let o = run(&["canonicalize", "--uniform", "2,4"]);
    assert_eq!(stdout(&o).trim(), "4:2:******");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("db.txt");
    std::fs::write(&file, "3 2 ***\n4 2 ******\n").unwrap();
    let o = run(&["canonicalize", "--revlex", file.to_str().unwrap()]);
    assert_eq!(stdout(&o), "3:2:***\n4:2:******\n");
    let o = run(&["sweep", "--catalog", file.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn graph_and_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    std::fs::write(
        &graph,
        r#"{"vertices":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#,
    )
    .unwrap();
    let o = run(&[
        "compute",
        "--graph",
        graph.to_str().unwrap(),
        "--which",
        "kl",
    ]);
    assert!(o.status.success());
    let r = &records(&o)[0];
    assert_eq!(r["rank"], 3);
    assert_eq!(r["matroid"]["bases"].as_array().unwrap().len(), 16);

    let matrix = dir.path().join("a.json");
    std::fs::write(&matrix, r#"{"rows":[["1","0","1"],["0","1","1"]]}"#).unwrap();
    let o = run(&["canonicalize", "--matrix", matrix.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "3:2:***");
}
