use std::path::PathBuf;
use std::process::{Command, Output};

use lecount::combinatorics::{count_linear_extensions, Method};
use lecount::formats::{parse_graph, parse_poset};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn lecount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lecount")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = lecount(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn count_examples() {
    assert_eq!(ok(&["count", "bruhat", "2 1 3"]), "2\n");
    assert_eq!(ok(&["count", "poset", &data("chain3.poset")]), "1\n");
    assert_eq!(ok(&["count", "incidence", &data("path3.graph")]), "16\n");
}

#[test]
fn count_variants_agree() {
    let vee = data("vee3.poset");
    assert_eq!(ok(&["count", "poset", &vee, "--method", "brute"]), "2\n");
    assert_eq!(ok(&["count", "poset", &data("diamond.poset"), "--mod", "3"]), "2\n");
    assert_eq!(ok(&["count", "incidence", "--graph", &data("path3.graph"), "--method", "generic"]), "16\n");
    assert_eq!(ok(&["count", "incidence", &data("path3.graph"), "--mod", "7"]), "2\n");
    assert_eq!(ok(&["count", "bruhat", "3 2 1"]), "6\n");
    assert_eq!(ok(&["count", "bruhat", "[1:2] 3"]), "1\n");
    assert_eq!(ok(&["count", "bruhat", "[2:2] 1", "--mod", "5"]), "3\n");
}

#[test]
fn circuit_count_from_dimacs_is_the_model_count() {
    assert_eq!(ok(&["count", "circuit", &data("small.cnf")]), "6\n");
    let circuit = ok(&["reduce", "sat", "--cnf", &data("small.cnf")]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("small.circuit");
    std::fs::write(&path, circuit).unwrap();
    assert_eq!(ok(&["count", "circuit", path.to_str().unwrap()]), "6\n");
}

#[test]
fn gate_verification() {
    let out = ok(&["gates", "verify", "--kind", "swap", "--prime", "11"]);
    assert_eq!(out.lines().last(), Some("pass"));
    assert!(!out.contains("[FAIL]"));
    // the printed AndOr point makes the (11,11) inequation vanish
    let o = lecount(&["gates", "verify", "--kind", "andor", "--prime", "11", "--printed"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] tt 11,11"));
    ok(&["gates", "verify", "--kind", "andor", "--prime", "11"]);
}

#[test]
fn gate_search_and_candidates() {
    let out = ok(&["gates", "candidates"]);
    assert!(out.starts_with("candidates: 96\n"));
    assert!(!out.contains("absent"));
    let out = ok(&["gates", "search", "--prime", "11", "--kind", "swap", "--limit", "0"]);
    assert_eq!(out, "swap solutions: 18\nswap printed point [10, 9, 0, 1, 9] found: yes\n");
}

#[test]
fn recovery_matches_brute_force() {
    for cmd in ["height2", "incidence"] {
        for f in ["chain3.poset", "vee3.poset"] {
            let path = data(f);
            let want = count_linear_extensions(&parse_poset(&std::fs::read_to_string(&path).unwrap()).unwrap(), Method::Brute).unwrap();
            let out = ok(&["recover", cmd, "--poset", &path]);
            assert!(out.contains(&format!("\next: {want}\n")), "{cmd} {f}: {out}");
            assert!(out.ends_with("pass\n"));
        }
    }
}

#[test]
fn reductions_emit_parseable_instances() {
    let q = ok(&["reduce", "height2", "--poset", &data("vee3.poset"), "--prime", "5"]);
    let qp = parse_poset(&q).unwrap();
    assert_eq!(qp.height(), 2);
    let g = ok(&["reduce", "incidence", "--poset", &data("vee3.poset"), "--prime", "5"]);
    // J_5 has 8 vertices; P adds 3
    assert_eq!(parse_graph(&g).unwrap().num_vertices(), 11);
}

#[test]
fn number_theory_and_gadgets() {
    assert_eq!(ok(&["nt", "primes", "4"]), "5 7 11 13\n");
    assert_eq!(ok(&["nt", "crt", "2:3", "3:5", "2:7"]), "value: 23\nmodulus: 105\n");
    let out = ok(&["gadget", "jp", "--prime", "5", "--direct"]);
    assert!(out.contains("ext: 70151973743876867555328\n"));
    assert!(out.contains("ext mod p: 3\n"));
}

#[test]
fn parse_errors_exit_2_with_the_line() {
    let o = lecount(&["count", "poset", &data("bad.poset")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(lecount(&["count", "poset", "/nonexistent.poset"]).status.code(), Some(2));
    assert_eq!(lecount(&["nt", "crt", "2:4", "1:6"]).status.code(), Some(2));
    assert_eq!(lecount(&["gates", "verify", "--kind", "swap", "--prime", "12"]).status.code(), Some(2));
}

#[test]
fn resource_limits_exit_3_and_echo_the_budget() {
    let o = lecount(&["count", "poset", &data("diamond.poset"), "--budget", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget of 2"));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = lecount(&["compile", "--cnf", &data("small.cnf"), "--prime", "11", "--out", out, "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget 1000"));
    // the manifest is still written
    let manifest = std::fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    let dry = ok(&["compile", "--cnf", &data("small.cnf"), "--prime", "11", "--dry-run"]);
    assert_eq!(manifest.split_whitespace().next(), Some(dry.trim()));
}

#[test]
fn json_reports() {
    let o = lecount(&["--format", "json", "count", "bruhat", "2 1 3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "lecount.run/1");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["results"][0]["value"], "2");
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
    assert!(v.get("timing_ms").is_none());

    let o = lecount(&["--format", "json", "count", "poset", &data("bad.poset")]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "parse");

    let o = lecount(&["--format", "json", "--timings", "gates", "verify", "--kind", "andor", "--prime", "7", "--printed"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "check-failed");
    assert!(v["timing_ms"].is_f64());
}

#[test]
fn output_is_deterministic() {
    let args = ["--jobs", "2", "recover", "incidence", "--poset", &data("diamond.poset")];
    assert_eq!(ok(&args), ok(&args));
    let a = ok(&["--format", "json", "count", "poset", &data("vee3.poset")]);
    let b = ok(&["--format", "json", "count", "poset", &data("vee3.poset")]);
    assert_eq!(a, b);
}

#[test]
fn selftest_subset() {
    let out = ok(&["selftest", "--quick", "--only", "3,14"]);
    assert!(out.starts_with("criterion  3 PASS"));
    assert!(out.ends_with("pass\n"));
}
