use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const NESTED: &str = r#"{"polygons": [
  {"id": "outer", "vertices": [[0,0],[10,0],[10,10],[0,10]]},
  {"id": "inner", "vertices": [[2,2],[8,2],[8,8],[2,8]]},
  {"id": "side", "vertices": [[20,0],[24,0],[22,3]]}
]}"#;

const CROSSING: &str = r#"{"polygons": [
  {"id": "A", "vertices": [[0,10],[10,10],[5,0]]},
  {"id": "B", "vertices": [[0,10],[10,10],[7,0]]}
]}"#;

fn nestpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nestpoly")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn json(p: impl AsRef<Path>) -> serde_json::Value {
    serde_json::from_slice(&fs::read(p).unwrap()).unwrap()
}

#[test]
fn nest_nested_squares() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.json", NESTED);
    let out = nestpoly(&["nest", "-i", &input, "--stats"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let forest = doc["forest"].as_array().unwrap();
    assert_eq!(forest.len(), 3);
    assert_eq!(forest[0]["id"], "inner");
    assert_eq!(forest[0]["parent"], "outer");
    assert_eq!(forest[0]["depth"], 1);
    assert!(forest[2]["parent"].is_null());
    assert_eq!(doc["stats"]["n"], 11);
    assert_eq!(doc["stats"]["m"], 3);
}

#[test]
fn overlap_is_rejected() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.json", CROSSING);
    let out = nestpoly(&["nest", "-i", &input, "--validate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("validation failed"));
    assert_eq!(nestpoly(&["nest", "-i", &input]).status.code(), Some(1));
    assert_eq!(nestpoly(&["validate", "-i", &input]).status.code(), Some(1));
    let ok = write(&dir, "ok.json", NESTED);
    assert!(nestpoly(&["validate", "-i", &ok]).status.success());
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"polygons\": [\n  {\"id\": \"a\", \"vertices\": [[0, 0], [1, x]]}\n]}");
    let out = nestpoly(&["nest", "-i", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let short = write(&dir, "short.json", r#"{"polygons":[{"id":"a","vertices":[[0,0],[1,0]]}]}"#);
    assert_eq!(nestpoly(&["nest", "-i", &short]).status.code(), Some(2));
    assert_eq!(nestpoly(&["nest", "-i", &path(&dir, "missing.json")]).status.code(), Some(2));
    assert_eq!(nestpoly(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    assert!(nestpoly(&["gen", "--seed", "17", "-o", &a]).status.success());
    assert!(nestpoly(&["gen", "--seed", "17", "-o", &b]).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let cfg = write(&dir, "cfg.json", r#"{"n_roots": 2, "max_depth": 1}"#);
    assert!(nestpoly(&["gen", "--seed", "3", "--config", &cfg, "-o", &a]).status.success());
    assert!(nestpoly(&["validate", "-i", &a]).status.success());
    let unknown = write(&dir, "unknown.json", r#"{"colour": "red"}"#);
    assert_eq!(nestpoly(&["gen", "--config", &unknown]).status.code(), Some(2));
}

#[test]
fn oracle_agrees_with_sweep() {
    let dir = TempDir::new().unwrap();
    for seed in ["1", "2", "3", "4", "5"] {
        let input = path(&dir, "in.json");
        assert!(nestpoly(&["gen", "--seed", seed, "-o", &input]).status.success());
        let (s, o) = (path(&dir, "sweep.json"), path(&dir, "oracle.json"));
        assert!(nestpoly(&["nest", "-i", &input, "-o", &s]).status.success());
        assert!(nestpoly(&["oracle", "-i", &input, "-o", &o]).status.success());
        assert_eq!(fs::read(&s).unwrap(), fs::read(&o).unwrap(), "seed {seed}");
    }
}

#[test]
fn bench_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv = path(&dir, "bench.csv");
    let args = ["bench", "--sizes", "4,16", "--shape", "convex", "--repeat", "1", "--oracle-cutoff", "4", "-o", &csv];
    assert!(nestpoly(&args).status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,n,N,elapsed_ns_sweep,elapsed_ns_oracle");
    assert_eq!(lines.len(), 3);
    for line in &lines[1..] {
        let f: Vec<&str> = line.split(',').collect();
        let m: usize = f[0].parse().unwrap();
        assert_eq!(f[2].parse::<usize>().unwrap(), 2 * m);
        assert!(f[3].parse::<u128>().unwrap() > 0);
    }
    assert!(!lines[1].ends_with(','));
    assert!(lines[2].ends_with(','));
    let bad = nestpoly(&["bench", "--sizes", "4", "--shape", "zigzag"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn render_writes_svg() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.json", NESTED);
    let (forest, svg) = (path(&dir, "forest.json"), path(&dir, "out.svg"));
    assert!(nestpoly(&["nest", "-i", &input, "-o", &forest]).status.success());
    assert_eq!(json(&forest)["forest"].as_array().unwrap().len(), 3);
    assert!(nestpoly(&["render", "-i", &input, "--forest", &forest, "-o", &svg]).status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<polygon").count(), 3);
    assert!(text.contains("inner (1)"));
    let direct = path(&dir, "direct.svg");
    assert!(nestpoly(&["render", "-i", &input, "-o", &direct]).status.success());
    assert_eq!(fs::read(&svg).unwrap(), fs::read(&direct).unwrap());
}
