use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dibrush(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dibrush"))
        .args(args)
        .env_remove("DIBRUSH_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

const HOURGLASS: &str = "8 7\n0 3\n1 3\n2 3\n3 4\n4 5\n4 6\n4 7\n";
const WEDGE: &str = "# four vertices\n4 4\n0 1\n0 2\n1 2\n3 2\n";
const BRIDGED: &str = "6 8\n0 1\n0 2\n1 2\n2 3\n3 4\n4 5\n3 5\n0 5\n";
const BRIDGED_CUT: &str = "6 7\n0 1\n0 2\n1 2\n3 4\n4 5\n3 5\n0 5\n";

#[test]
fn gen_families() {
    let out = dibrush(&["gen", "--family", "tt", "--n", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("5 10\n"));

    let out = dibrush(&[
        "gen",
        "--family",
        "rotational",
        "--n",
        "7",
        "--symbols",
        "1,2,3",
    ]);
    assert!(stdout(&out).starts_with("7 21\n"));

    let out = dibrush(&[
        "gen",
        "--family",
        "rotational",
        "--n",
        "6",
        "--symbols",
        "1,2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid family spec"));
    assert!(out.stdout.is_empty());
}

#[test]
fn gen_seed_from_env() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_dibrush"))
            .args(["gen", "--family", "random-dag", "--n", "9"])
            .env("DIBRUSH_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("11"), run("11"));
    let flag = dibrush(&["gen", "--family", "random-dag", "--n", "9", "--seed", "11"]);
    assert_eq!(flag.stdout, run("11"));
}

#[test]
fn solve_bridged() {
    let dir = tempfile::tempdir().unwrap();
    for (text, value) in [(BRIDGED, 3), (BRIDGED_CUT, 5)] {
        let f = write(dir.path(), "g.txt", text);
        let out = dibrush(&["solve", &f, "--json"]);
        assert!(out.status.success());
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["value"], value);
        assert!(v["witness"]["order"].is_array());
        assert!(v["stats"]["orders_explored"].is_u64());
    }
}

#[test]
fn solve_too_large_then_bounds_only() {
    let dir = tempfile::tempdir().unwrap();
    let path: String = "10 9\n".to_owned()
        + &(0..9)
            .map(|i| format!("{i} {}\n", i + 1))
            .collect::<String>();
    let f = write(dir.path(), "path10.txt", &path);
    let out = dibrush(&["solve", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--bounds-only"));
    let out = dibrush(&["solve", &f, "--bounds-only"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["arc_count"], 9);
}

#[test]
fn strategy_methods() {
    let dir = tempfile::tempdir().unwrap();
    let tt6 = stdout(&dibrush(&["gen", "--family", "tt", "--n", "6"]));
    let f = write(dir.path(), "tt6.txt", &tt6);
    let out = dibrush(&["strategy", &f, "--method", "tt"]);
    let plan: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let total: u64 = plan["initial"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .sum();
    assert_eq!(total, 9);

    let tree = write(dir.path(), "tree.txt", "5 4\n0 1\n0 2\n1 3\n1 4\n");
    let plan: Value =
        serde_json::from_str(&stdout(&dibrush(&["strategy", &tree, "--method", "tree"]))).unwrap();
    assert_eq!(plan["initial"][0], 3);

    let cycle = write(dir.path(), "c3.txt", "3 3\n0 1\n1 2\n2 0\n");
    let out = dibrush(&["strategy", &cycle, "--method", "dag-recursive"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not applicable"));

    let out = dibrush(&["strategy", &cycle, "--method", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_writes_trace_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "hourglass.txt", HOURGLASS);
    let plan = write(
        dir.path(),
        "plan.json",
        r#"{"initial":[1,1,1,0,0,0,0,0],"order":[0,1,2,3,4,5,6,7]}"#,
    );
    let trace = dir.path().join("trace.json");
    let dots = dir.path().join("dots");
    let out = dibrush(&[
        "simulate",
        &g,
        "--plan",
        &plan,
        "--trace",
        trace.to_str().unwrap(),
        "--dot-dir",
        dots.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(fs::read_dir(&dots).unwrap().count(), 9);
    let last = fs::read_to_string(dots.join("step_008.dot")).unwrap();
    assert!(last.contains("style=dashed"));
    assert!(!last.contains("penwidth=2"));
    let t: Value = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t["steps"].as_array().unwrap().len(), 9);
}

#[test]
fn simulate_wedge_and_bad_plan() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "wedge.txt", WEDGE);
    let plan = write(
        dir.path(),
        "plan.json",
        r#"{"initial":[2,0,0,1],"order":[0,1,3,2]}"#,
    );
    let out = dibrush(&["simulate", &g, "--plan", &plan]);
    let t: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let brushes: Vec<Value> = t["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["brushes"].clone())
        .collect();
    assert_eq!(brushes[0], serde_json::json!([2, 0, 0, 1]));
    assert_eq!(brushes[4], serde_json::json!([0, 0, 3, 0]));

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"initial":[1,0,0,1],"order":[0,1,2,3]}"#,
    );
    let out = dibrush(&["simulate", &g, "--plan", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("vertex 0") && err.contains("step 1"), "{err}");
}

#[test]
fn solver_output_feeds_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "bridged.txt", BRIDGED);
    let solved = write(
        dir.path(),
        "r.json",
        &stdout(&dibrush(&["solve", &g, "--json"])),
    );
    let out = dibrush(&["simulate", &g, "--plan", &solved]);
    let t: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(t["total"], 3);
}

#[test]
fn bounds_report() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "hourglass.txt", HOURGLASS);
    let v: Value = serde_json::from_str(&stdout(&dibrush(&["bounds", &g]))).unwrap();
    assert_eq!(v["max_outdeg"], 3);
    assert_eq!(v["arc_count"], 7);
    assert_eq!(v["lower"], 3);
}

#[test]
fn verify_suites() {
    for (suite, n) in [("theorems", "6"), ("oracle", "4"), ("transpose", "6")] {
        let out = dibrush(&["verify", "--suite", suite, "--max-n", n]);
        assert!(out.status.success(), "{suite}: {}", stdout(&out));
        assert!(!stdout(&out).contains("FAIL"));
    }
    let out = dibrush(&["verify", "--max-n", "11"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn conjecture_defaults() {
    let out = dibrush(&["conjecture"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["max_value"], 1);
    assert_eq!(v[1]["bound"], 3);
    assert_eq!(dibrush(&["conjecture", "--n", "4"]).status.code(), Some(1));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "bad.txt", "3 2\n0 1\n1 7\n");
    let out = dibrush(&["bounds", &g]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn closed_stdout_is_not_an_error() {
    use std::io::{BufRead, BufReader};
    use std::process::Stdio;

    let mut child = Command::new(env!("CARGO_BIN_EXE_dibrush"))
        .args(["gen", "--family", "tt", "--n", "300"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut first = String::new();
    BufReader::new(child.stdout.take().unwrap())
        .read_line(&mut first)
        .unwrap();
    assert_eq!(first, "300 44850\n");
    let out = child.wait_with_output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
