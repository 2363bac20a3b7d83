use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lrcmat::fixtures;
use lrcmat::io;
use serde_json::Value;
use tempfile::TempDir;

fn lrcmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrcmat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(args: &[&str]) -> String {
    let o = lrcmat(args);
    assert!(o.status.success(), "{args:?} failed: {}", stderr(&o));
    stdout(&o)
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"))
}

fn params_json(path: &str, delta: usize) -> Value {
    json(&ok(&["params", path, "--delta", &delta.to_string(), "--json"]))
}

#[test]
fn uniform_params() {
    let out = ok(&["params", r#"{"uniform":{"n":10,"k":4}}"#, "--delta", "7"]);
    assert_eq!(out.trim(), "(n,k,d,r,δ) = (10,4,7,4,7)");
    let out = ok(&["params", r#"{"uniform":{"n":10,"k":4}}"#]);
    assert_eq!(out.trim(), "(n,k,d) = (10,4,7)");
}

#[test]
fn matrix_params() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "a.json", &io::matrix_to_json(&fixtures::overlapping_triple_matrix()));
    let v = params_json(s(&p), 3);
    assert_eq!((v["n"].as_u64(), v["k"].as_u64(), v["d"].as_u64()), (Some(12), Some(6), Some(3)));
    assert_eq!((v["r"].as_u64(), v["delta"].as_u64()), (Some(3), Some(3)));
}

fn assert_round_trip(lattice: &str) {
    let v = json(lattice);
    let declared = v["declared"].clone();
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "z.json", lattice);
    let delta = declared["delta"].as_u64().unwrap() as usize;
    assert_eq!(params_json(s(&p), delta), declared);
}

#[test]
fn construct_general_round_trips() {
    let dir = TempDir::new().unwrap();
    let sys = write(&dir, "sys.json", &io::set_system_to_json(&fixtures::overlapping_triple_system()));
    let out = dir.path().join("z.json");
    ok(&["construct", "general", s(&sys), "--verify", "--out", s(&out)]);
    let text = std::fs::read_to_string(&out).unwrap();
    let v = json(&text);
    assert_eq!(v["members"].as_array().unwrap().len(), 8);
    assert_round_trip(&text);
    ok(&["verify", s(&out)]);
}

#[test]
fn construct_graph_round_trips_and_draws() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &io::graph_to_json(&fixtures::two_paths_graph()));
    let dot = dir.path().join("g.dot");
    let text = ok(&["construct", "graph", s(&g), "--k", "14", "--r", "4", "--delta", "2", "--dot", s(&dot), "--verify"]);
    let v = json(&text);
    let d = &v["declared"];
    assert_eq!([&d["n"], &d["k"], &d["d"], &d["r"], &d["delta"]].map(|x| x.as_u64().unwrap()), [27, 14, 11, 4, 2]);
    assert_round_trip(&text);
    let drawing = std::fs::read_to_string(&dot).unwrap();
    assert!(drawing.starts_with("graph"), "{drawing}");
}

#[test]
fn construct_dmax_witness_round_trips() {
    let text = ok(&["construct", "dmax-witness", "--n", "122", "--k", "19", "--r", "9", "--delta", "5"]);
    let d = json(&text)["declared"].clone();
    assert_eq!(d["d"].as_u64(), Some(96));
    assert_round_trip(&text);
}

#[test]
fn decide_reports_the_case() {
    let v = json(&ok(&["decide", "--n", "12", "--k", "6", "--r", "3", "--delta", "3"]));
    assert_eq!(v["case"], "nonexist_i");
    assert_eq!(v["perfect"], false);
    assert_eq!((v["bound"].as_u64(), v["d_upper"].as_u64()), (Some(5), Some(4)));
    let v = json(&ok(&["decide", "--n", "27", "--k", "14", "--r", "4", "--delta", "2"]));
    assert_eq!(v["case"], "iii_yes");
    assert_eq!(v["perfect"], true);
}

#[test]
fn gammoid_dot_carries_the_equivalence() {
    let dir = TempDir::new().unwrap();
    let sys = write(&dir, "sys.json", &io::set_system_to_json(&fixtures::overlapping_triple_system()));
    let out = ok(&["gammoid", s(&sys)]);
    assert!(out.starts_with("// middle vertices 6"), "{out}");
    assert!(out.contains("equivalence true"));
    assert!(out.contains("digraph"));
}

#[test]
fn represent_is_reproducible() {
    let u = r#"{"uniform":{"n":6,"k":3}}"#;
    let a = ok(&["represent", u, "--prime", "7", "--seed", "11"]);
    let b = ok(&["--seed", "11", "represent", u, "--prime", "7", "--jobs", "1"]);
    assert_eq!(a, b);
    let m = io::matrix_from_json(&a).unwrap();
    assert_eq!((m.prime(), m.nrows(), m.ncols()), (7, 3, 6));
    let csv = ok(&["represent", u, "--prime", "7", "--seed", "11", "--csv"]);
    assert_eq!(csv.lines().count(), 3);
    let scan = ok(&["represent", u, "--scan", "2,7", "--attempts", "200"]);
    assert!(scan.contains("found = false") && scan.contains("found = true"), "{scan}");
}

#[test]
fn exit_codes() {
    // Z1 fails: a cyclic flat whose rank equals its size
    let bad = r#"{"n":4,"members":[{"elements":[],"rank":0},{"elements":[0,1],"rank":2},{"elements":[0,1,2,3],"rank":3}]}"#;
    let o = lrcmat(&["params", bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Z"), "{}", stderr(&o));
    let o = lrcmat(&["verify", bad]);
    assert_eq!(o.status.code(), Some(2));

    let sys = r#"{"n":4,"k":9,"flats":[{"elements":[0,1,2,3],"rank":2}]}"#;
    let o = lrcmat(&["construct", "general", sys]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(iii)"), "{}", stderr(&o));

    let o = lrcmat(&["decide", "--n", "5", "--k", "4", "--r", "2", "--delta", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let o = lrcmat(&["represent", r#"{"uniform":{"n":20,"k":3}}"#]);
    assert_eq!(o.status.code(), Some(3));
    let o = lrcmat(&["params", r#"{"uniform":{"n":500,"k":3}}"#]);
    assert_eq!(o.status.code(), Some(3));

    let o = lrcmat(&["params", "/nonexistent/matroid.json"]);
    assert_eq!(o.status.code(), Some(1));
    let o = lrcmat(&["params", "{not json"]);
    assert_eq!(o.status.code(), Some(2));
}
