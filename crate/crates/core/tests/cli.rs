use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nodal").chain(args.iter().copied());
    let code = nodal::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"))
}

#[test]
fn nodes_output_feeds_back_into_defect() {
    let nodes = json(&["nodes", "--kind", "hypersurface-P4", "-n", "3", "--signs", "++++"]);
    let dir = std::env::temp_dir().join(format!("nodal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cubic.json");
    std::fs::write(&path, nodes.to_string()).unwrap();
    let d = json(&["defect", "--file", path.to_str().unwrap(), "--prime", "181"]);
    assert_eq!(d["s"], 6);
    assert_eq!(d["defect_exact"], 2);
    assert_eq!(d["defect_modular"], 2);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn catalog_show_reparses() {
    let (code, out, _) = run(&["catalog", "show", "cubic-d4-matrix"]);
    assert_eq!(code, 0);
    let entry = nodal::catalog::parse_entry(&out, "stdout").unwrap();
    assert_eq!(entry.name, "cubic-d4-matrix");
}

#[test]
fn count_reports_flip_totals() {
    let v = json(&["count", "--catalog", "cubic-d4-matrix", "--workers", "2"]);
    assert_eq!(v["projective_count"], 102);
    assert_eq!(v["total"], 512);
    let v = json(&["count", "--catalog", "ci-quadrics-s6"]);
    assert_eq!(v["projective_count"], 46);
}

#[test]
fn flip_cap_is_enforced() {
    let (code, _, err) = run(&["count", "--catalog", "kummer-16", "--cap", "10"]);
    assert_ne!(code, 0);
    assert!(!err.is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["count", "--catalog", "no-such-entry"]).0, 1);
    assert_eq!(run(&["count", "--catalog", "kummer-16", "--workers", "0"]).0, 1);
    assert_eq!(run(&["catalog", "check", "chmutov-cubic"]).0, 0);
    // published value disagrees with the computed defect
    assert_eq!(run(&["catalog", "check", "chmutov-quartic-pppm"]).0, 2);
}

#[test]
fn text_and_csv_formats() {
    let (code, out, _) = run(&["--format", "csv", "arnold", "--d", "2..5", "--n", "4"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("5,135,")), "{out}");
    let (code, out, _) = run(&["--format", "text", "betti", "--kind", "hypersurface-P4", "-n", "5", "--s", "96", "--d", "10"]);
    assert_eq!(code, 0);
    assert!(!out.is_empty());
}

#[test]
fn inert_prime_search() {
    let v = json(&["inert-prime", "--minpoly", "-2,0,1", "--check", "181"]);
    assert_eq!(v["inert"], true);
    let v = json(&["inert-prime", "--cosine", "5"]);
    assert!(v["prime"].as_u64().unwrap() >= 100);
}

#[test]
fn binary_is_deterministic_across_workers() {
    let bin = env!("CARGO_BIN_EXE_nodal");
    let go = |w: &str| Command::new(bin).args(["count", "--catalog", "kummer-16", "--workers", w]).output().unwrap();
    let (a, b) = (go("1"), go("8"));
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["dimA"], 6);
}
