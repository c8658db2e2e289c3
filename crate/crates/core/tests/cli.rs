use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dpgeom::concepts::{empirical_error, HypothesisExpr};
use dpgeom::formats;
use dpgeom::learners::{self, ConceptClass, TaskSpec};
use dpgeom::rng::SeedPath;
use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpgeom")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_data_is_deterministic_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gen-data", "--class", "convex-kgon", "--k", "3", "--d", "16", "--n", "30", "--seed", "9"];
    let a = run(dir.path(), &[&args[..], &["--out", "a.jsonl"]].concat());
    let b = run(dir.path(), &[&args[..], &["--out", "b.jsonl"]].concat());
    assert_eq!((code(&a), code(&b)), (0, 0));
    let ta = fs::read(dir.path().join("a.jsonl")).unwrap();
    assert_eq!(ta, fs::read(dir.path().join("b.jsonl")).unwrap());
    assert_eq!(String::from_utf8(ta).unwrap().lines().count(), 31);
    assert!(dir.path().join("a.jsonl.target.json").exists());
    let bad = run(dir.path(), &["gen-data", "--d", "0", "--out", "c.jsonl"]);
    assert_eq!(code(&bad), 2);
    let s = formats::read_sample(&dir.path().join("a.jsonl")).unwrap();
    assert_eq!(s.len(), 30);
}

#[test]
fn learn_matches_library_call() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&run(p, &["gen-data", "--class", "conj", "--k", "2", "--d", "8", "--n", "200", "--seed", "1", "--out", "s.jsonl"])), 0);
    let o = run(p, &["learn", "--class", "conj", "--k", "2", "--alpha", "0.2", "--epsilon", "3", "--seed", "4", "--sample", "s.jsonl", "--out", "h.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let via_cli = json(&p.join("h.json"))["hypothesis"].clone();
    let s = formats::read_sample(&p.join("s.jsonl")).unwrap();
    let spec = TaskSpec::new(ConceptClass::Conj, 2, 8, 0.2, 0.1, 3.0, 1e-6).unwrap();
    let (h, trace) = learners::learn(&spec, &s, SeedPath::root(4)).unwrap();
    assert_eq!(via_cli, formats::hypothesis_to_json(&h));
    assert_eq!(json(&p.join("h.json.trace.json"))["trace"]["iterations"].as_array().unwrap().len(), trace.iterations.len());
    let e = run(p, &["eval", "--hypothesis", "h.json", "--sample", "s.jsonl"]);
    let report: Value = serde_json::from_slice(&e.stdout).unwrap();
    let err = empirical_error(&h, &s).unwrap();
    assert_eq!(report["errors"].as_u64().unwrap(), *err.numer() * (200 / *err.denom()));
    let h2: HypothesisExpr = formats::hypothesis_from_json(&via_cli).unwrap();
    assert_eq!(h2, h);
}

#[test]
fn learn_trace_off_and_missing_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&run(p, &["gen-data", "--class", "disj", "--k", "2", "--d", "5", "--n", "40", "--out", "s.jsonl"])), 0);
    let o = run(p, &["learn", "--class", "disj", "--k", "2", "--sample", "s.jsonl", "--out", "h.json", "--trace", "off"]);
    assert_eq!(code(&o), 0);
    assert!(p.join("h.json").exists());
    assert!(!p.join("h.json.trace.json").exists());
    let missing = run(p, &["learn", "--sample", "nope.jsonl", "--out", "x.json"]);
    assert_eq!(code(&missing), 1);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("nope.jsonl"));
}

#[test]
fn resource_cap_exit_code_with_hint() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&run(p, &["gen-data", "--class", "k-union-gon", "--k", "3", "--d", "8", "--n", "8", "--out", "s.jsonl"])), 0);
    let o = run(p, &["learn", "--class", "k-union-gon", "--k", "3", "--sample", "s.jsonl", "--out", "h.json", "--triple-cap", "5"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("triple cap"));
}

#[test]
fn experiment_rows_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let cfg = "[task]\nclass = \"conj\"\nk = 2\nd = 6\nalpha = 0.2\nepsilon = 4.0\n\n[data]\nn = 60\n\n[run]\ntrials = 3\nholdout = 500\n";
    fs::write(p.join("exp.toml"), cfg).unwrap();
    assert_eq!(code(&run(p, &["experiment", "--config", "exp.toml", "--out", "r.csv"])), 0);
    let text = fs::read_to_string(p.join("r.csv")).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "seed,n,epsilon,delta,alpha,k,d,train_error,heldout_error,wall_time,iterations");
    assert_eq!(rows.len(), 4);
    assert!(text.lines().any(|l| l.starts_with("# config_hash: ")));
    let o = run(p, &["experiment", "--config", "exp.toml", "--seeds", "0,1,2,3,4", "--out", "r.csv", "--resume"]);
    assert_eq!(code(&o), 0);
    let text2 = fs::read_to_string(p.join("r.csv")).unwrap();
    let rows2: Vec<&str> = text2.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows2.len(), 6);
    assert_eq!(&rows2[..4], &rows[..]);
    // re-running a row's seed reproduces its errors
    assert_eq!(code(&run(p, &["experiment", "--config", "exp.toml", "--seeds", "4", "--out", "one.csv"])), 0);
    let one = fs::read_to_string(p.join("one.csv")).unwrap();
    let strip = |r: &str| r.split(',').enumerate().filter(|(i, _)| *i != 9).map(|(_, v)| v.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(one.lines().last().unwrap()), strip(rows2[5]));
    assert_eq!(code(&run(p, &["experiment", "--config", "exp.toml", "--trials", "0", "--out", "z.csv"])), 2);
}

#[test]
fn verify_suites_and_fault_injection() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let ok = run(p, &["verify", "--out", "report.json"]);
    assert_eq!(code(&ok), 0);
    let reports = json(&p.join("report.json"))["reports"].as_array().unwrap().clone();
    assert!(reports.len() >= 4 && reports.iter().all(|r| r["pass"] == true));
    let one = run(p, &["verify", "--suite", "em-pmf"]);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(code(&run(p, &["verify", "--suite", "arrangement", "--inject-fault"])), 4);
    assert_eq!(code(&run(p, &["verify", "--suite", "nonsense"])), 2);
}

#[test]
fn arrangement_dump_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&run(p, &["gen-data", "--class", "convex-kgon", "--k", "3", "--d", "8", "--n", "6", "--out", "s.jsonl"])), 0);
    assert_eq!(code(&run(p, &["arrangement-dump", "--sample", "s.jsonl", "--out", "arr.json"])), 0);
    let v = json(&p.join("arr.json"));
    let s = formats::read_sample(&p.join("s.jsonl")).unwrap();
    let arr = dpgeom::arrangement::build_arrangement(&s, s.domain().grid().unwrap()).unwrap();
    let faces = v["faces"].as_array().unwrap();
    assert_eq!(faces.len(), arr.face_count());
    assert_eq!(faces[0]["mask"].as_str().unwrap().len(), 16);
    assert!(v["meta"]["version"].is_string());
    let bool_sample = run(p, &["gen-data", "--class", "conj", "--d", "4", "--n", "5", "--out", "b.jsonl"]);
    assert_eq!(code(&bool_sample), 0);
    assert_eq!(code(&run(p, &["arrangement-dump", "--sample", "b.jsonl"])), 2);
}
