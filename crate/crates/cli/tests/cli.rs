use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flexconn")).args(args).output().expect("binary runs")
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let p = std::env::temp_dir().join(format!("flexconn-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&p).unwrap();
        TempDir(p)
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, contents).unwrap();
        p.to_str().unwrap().to_string()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

const FIX_B: &str = "c two unsafe hubs\np flex 7 10\nv 0 u\nv 1 u\nv 2 u\nv 3 u\nv 4 u\nv 5 s\nv 6 u\n\
e 0 1\ne 1 2\ne 2 3\ne 3 0\ne 0 4\ne 2 4\ne 1 5\ne 3 5\ne 0 6\ne 1 6\n";

#[test]
fn solve_fvc_fixture() {
    let dir = TempDir::new("solve");
    let input = dir.file("fixb.txt", FIX_B);
    let out = run(&["solve", "--problem", "fvc", "-i", &input]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["apx_size"], 8);
    assert_eq!(v["exact_opt"], 7);
    assert_eq!(v["lower_bound"], 7);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["meta"]["lower_bound"], 7);
    assert_eq!(v["meta"]["apx1"], 10);
}

#[test]
fn exact_and_check_agree() {
    let dir = TempDir::new("check");
    let input = dir.file("fixb.txt", FIX_B);
    let sol_path = dir.0.join("sol.json");
    let out = run(&["exact", "--problem", "fvc", "-i", &input, "-o", sol_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check", "--problem", "fvc", "-i", &input, "--solution", sol_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["feasible"].clone(), v["size"].clone()), (Value::Bool(true), Value::from(7)));
    let partial = dir.file("partial.txt", "0 1 2 3");
    assert_eq!(run(&["check", "--problem", "fvc", "-i", &input, "--solution", &partial]).status.code(), Some(2));
    let unknown = dir.file("unknown.txt", "0 99");
    assert_eq!(run(&["check", "--problem", "fvc", "-i", &input, "--solution", &unknown]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new("codes");
    let bridge = dir.file("bridge.txt", "p flex 3 2\ne 0 1 u\ne 1 2\n");
    let out = run(&["solve", "--problem", "fgc", "-i", &bridge]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "infeasible");
    let broken = dir.file("broken.txt", "e 0 1\n");
    assert_eq!(run(&["solve", "--problem", "fgc", "-i", &broken]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--problem", "nope", "-i", &broken]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--problem", "fgc", "-i", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn kfgc_uses_header_k_unless_overridden() {
    let dir = TempDir::new("kfgc");
    let tree = run(&["gen", "--kind", "safe-tree", "--n", "6", "--k", "3"]);
    let input = dir.file("tree.txt", std::str::from_utf8(&tree.stdout).unwrap());
    let v: Value = serde_json::from_slice(&run(&["solve", "--problem", "kfgc", "-i", &input]).stdout).unwrap();
    assert_eq!((v["k"].clone(), v["apx_size"].clone()), (Value::from(3), Value::from(5)));
    let v: Value = serde_json::from_slice(&run(&["solve", "--problem", "kfgc", "--k", "1", "-i", &input]).stdout).unwrap();
    assert_eq!(v["k"], 1);
}

#[test]
fn bench_csv_shape() {
    let out = run(&["bench", "--problem", "kfgc", "--k", "2", "--trials", "6", "--n-min", "4", "--n-max", "6", "--p", "0.8"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 6 + 3);
    assert!(lines[0].starts_with("row,n,m,apx,opt,lower_bound"));
    assert!(lines[7].starts_with("summary_max"));
    assert!(lines[7].contains("true"));
    assert!(!csv.contains('\r'));
}

#[test]
fn lemmas_report() {
    let out = run(&["lemmas", "--samples", "2000", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["samples"], 2000);
    assert_eq!(run(&["lemmas", "--samples", "0"]).status.code(), Some(1));
}
