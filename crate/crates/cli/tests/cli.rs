use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const K5: &str = "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const C4: &str = "4 4\n0 1\n1 2\n2 3\n3 0\n";
const TWO_COLOR: &str =
    "EX X. all e. all u. all v. ((E e & I u e & I v e & u != v) -> ((X u -> ~X v) & (~X v -> X u)))\n";

fn kcross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kcross"))
        .args(args)
        .env_remove("KCROSS_MAX_NODES")
        .env_remove("KCROSS_MAX_SECONDS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn number_writes_artifacts_that_revalidate() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k5.edges", K5);
    let (rep, svg) = (dir.path().join("r.json"), dir.path().join("d.svg"));
    let o = kcross(&["cross", "number", "--in", s(&g), "--report", s(&rep), "--svg", s(&svg)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let v = kcross(&["cross", "validate", "--report", s(&rep)]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));

    // Tampering with the drawing is caught.
    let mut r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    r["drawing"]["crossings"] = serde_json::json!([]);
    fs::write(&rep, r.to_string()).unwrap();
    assert_eq!(kcross(&["cross", "validate", "--report", s(&rep)]).status.code(), Some(1));
}

#[test]
fn single_worker_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k5.edges", K5);
    let mut outs = Vec::new();
    for i in 0..2 {
        let (rep, svg) = (dir.path().join(format!("r{i}.json")), dir.path().join(format!("d{i}.svg")));
        kcross(&["cross", "number", "--in", s(&g), "--report", s(&rep), "--svg", s(&svg)]);
        outs.push((fs::read(rep).unwrap(), fs::read(svg).unwrap()));
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn decide_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k5.edges", K5);
    let no = kcross(&["cross", "decide", "--in", s(&g), "--k", "0"]);
    assert_eq!((no.status.code(), stdout(&no).trim().to_string()), (Some(1), "no".into()));
    let yes = kcross(&["cross", "decide", "--in", s(&g), "--k", "1", "--forbid", "0,1"]);
    assert_eq!(yes.status.code(), Some(0));

    let k6 = file(&dir, "k6.json", &kcross::io::write_json(&kcross::graph::generators::complete(6)));
    let unknown = Command::new(env!("CARGO_BIN_EXE_kcross"))
        .args(["cross", "decide", "--in", s(&k6), "--k", "3"])
        .env("KCROSS_MAX_NODES", "1")
        .output()
        .unwrap();
    assert_eq!(unknown.status.code(), Some(2));
    assert_eq!(stdout(&unknown).trim(), "unknown");
}

#[test]
fn input_errors_exit_3_and_name_the_element() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "loop.edges", "2 1\n1 1\n");
    let o = kcross(&["cross", "number", "--in", s(&g)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2: loop at vertex 1"));

    let g = file(&dir, "k5.edges", K5);
    let o = kcross(&["cross", "decide", "--in", s(&g), "--k", "1", "--forbid", "42"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("e42"));
    let missing = kcross(&["cross", "number", "--in", "/nonexistent/g.edges"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn mso_eval_and_interpret() {
    let dir = TempDir::new().unwrap();
    let c4 = file(&dir, "c4.edges", C4);
    let k3 = file(&dir, "k3.edges", "3 3\n0 1\n1 2\n2 0\n");
    let f = file(&dir, "twocolor.mso", TWO_COLOR);
    let o = kcross(&["mso", "eval", "--graph", s(&c4), "--formula", s(&f)]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(0), "true".into()));
    let o = kcross(&["mso", "eval", "--graph", s(&k3), "--formula", s(&f)]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(1), "false".into()));

    let deg = file(&dir, "edge.mso", "E x & ~Y x\n");
    let o = kcross(&["mso", "eval", "--graph", s(&c4), "--formula", s(&deg), "--set", "Y=e0,e1", "--witness", "x"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"x\": \"e2\""));

    // Crossing two opposite edges of C4 leaves it 2-colorable.
    let o = kcross(&["mso", "interpret", "--formula", s(&f), "--graph", s(&c4), "--e1", "0", "--e2", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("\"agree\": true"));

    let bad = file(&dir, "bad.mso", "ex x. (V x &");
    assert_eq!(kcross(&["mso", "eval", "--graph", s(&c4), "--formula", s(&bad)]).status.code(), Some(3));
}

#[test]
fn grid_pipeline_on_a_planted_instance() {
    let dir = TempDir::new().unwrap();
    let (g, h) = (dir.path().join("g.json"), dir.path().join("h.json"));
    let o = kcross(&["grid", "gen", "--r", "4", "--planted", "3", "--out", s(&g), "--embedding", s(&h)]);
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let n = summary["vertices"].as_u64().unwrap();

    let red = dir.path().join("red.json");
    let o = kcross(&["grid", "reduce", "--in", s(&g), "--k", "1", "--embedding", s(&h), "--out", s(&red)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(summary["vertices_after"].as_u64().unwrap() < n);

    let o = kcross(&["grid", "embed", "--in", s(&g), "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = kcross(&["grid", "embed", "--in", s(&file(&dir, "k5.edges", K5)), "--r", "3"]);
    assert_eq!(o.status.code(), Some(1));

    let hex = dir.path().join("hex.json");
    kcross(&["grid", "gen", "--r", "4", "--out", s(&hex)]);
    let rep = dir.path().join("rep.json");
    let o = kcross(&["cross", "decide", "--in", s(&hex), "--k", "1", "--reduce", "--report", s(&rep)]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    assert!(!r["reduction"]["steps"].as_array().unwrap().is_empty());
    assert_eq!(kcross(&["cross", "validate", "--report", s(&rep)]).status.code(), Some(0));
}
