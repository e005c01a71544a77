use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn rsq(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsq"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const THREE_CYCLE: &str = r#"{"vertices":["a","b","c"],"arrows":[
    {"id":"x","src":"a","tgt":"b"},{"id":"y","src":"b","tgt":"c"},{"id":"z","src":"c","tgt":"a"}]}"#;
const LOOP: &str = r#"{"vertices":["a"],"arrows":[{"id":"l","src":"a","tgt":"a"}]}"#;
const A2: &str = r#"{"vertices":["a","b"],"arrows":[{"id":"alpha","src":"a","tgt":"b"}]}"#;

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c3.json"), THREE_CYCLE).unwrap();
    fs::write(dir.path().join("loop.json"), LOOP).unwrap();
    fs::write(dir.path().join("a2.json"), A2).unwrap();
    dir
}

#[test]
fn analyze_three_cycle() {
    let d = setup();
    let o = rsq(d.path(), &["analyze", "c3.json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "gradable: no, r_Q: 3, shape: TildeA(3, oriented)");
}

#[test]
fn classify_loop_table() {
    let d = setup();
    let o = rsq(d.path(), &["classify", "loop.json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = |name: &str| text.lines().find(|l| l.starts_with(name)).unwrap().split_whitespace().collect::<Vec<_>>().join(" ");
    assert_eq!(row("ZA_inf"), "ZA_inf 1 no yes");
    assert_eq!(row("double infinite path"), "double infinite path 1 yes no");
}

#[test]
fn classify_evidence_writes_dot() {
    let d = setup();
    let o = rsq(d.path(), &["classify", "a2.json", "--evidence", "--dot-dir", "dots"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("ZA2"));
    let dot = fs::read_to_string(d.path().join("dots/component-0.dot")).unwrap();
    assert!(dot.starts_with("digraph"));
}

#[test]
fn decompose_two_summands() {
    let d = setup();
    let c = r#"{"field":"fp:7","terms":{"0":[{"vertex":"a","mult":1}],"2":[{"vertex":"b","mult":1}]},"diff":{},"truncated_below":false}"#;
    fs::write(d.path().join("c.json"), c).unwrap();
    let o = rsq(d.path(), &["decompose", "c.json", "--quiver", "a2.json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("summands: 2"));
    let first: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.path().join("c.0.json")).unwrap()).unwrap();
    let second: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.path().join("c.1.json")).unwrap()).unwrap();
    assert_eq!(first["terms"]["0"][0]["vertex"], "a");
    assert_eq!(second["terms"]["2"][0]["vertex"], "b");
    assert_eq!(first["field"], "fp:7");
}

#[test]
fn koszul_pushdown_is_deterministic_and_resolves_simple() {
    let d = setup();
    fs::write(d.path().join("rep.json"), r#"{"dims":{"a@0":1,"b@1":1},"maps":{"alpha@0":[[1]]}}"#).unwrap();
    let run = |out: &str| {
        let o = rsq(d.path(), &["--field", "q", "koszul", "a2.json", "--rep", "rep.json", "--pushdown", "-o", out]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(d.path().join(out)).unwrap()
    };
    let first = run("x.json");
    assert_eq!(first, run("y.json"));
    let o = rsq(d.path(), &["homology", "x.json"]);
    assert_eq!(stdout(&o), "H^0: (a:1)\n");
    let o = rsq(d.path(), &["hom", "x.json", "y.json"]);
    assert_eq!(stdout(&o), "dim Hom_K: 1\n");
}

#[test]
fn cover_dot_labels() {
    let d = setup();
    let o = rsq(d.path(), &["cover", "loop.json", "--window", "0..2", "--dot", "w.dot"]);
    assert!(o.status.success());
    let dot = fs::read_to_string(d.path().join("w.dot")).unwrap();
    for l in ["a@0", "a@1", "a@2"] {
        assert!(dot.contains(&format!("\"{l}\"")));
    }
}

#[test]
fn knit_writes_dashed_translation() {
    let d = setup();
    let o = rsq(d.path(), &["ar", "knit", "a2.json", "--window", "0..1", "--steps", "5", "--dot", "ar.dot"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("vertices: 3, meshes checked: 1, mesh violations: 0"));
    assert!(fs::read_to_string(d.path().join("ar.dot")).unwrap().contains("dashed"));
}

#[test]
fn simples_reports_location_and_map() {
    let d = setup();
    let o = rsq(d.path(), &["simples", "a2.json", "--vertex", "b", "--shift", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().next().unwrap(), "S[b][0] = F_pi(I_x°)[s] with x = b@1, s = -1");
    assert!(String::from_utf8_lossy(&o.stderr).contains("no outgoing arrows"));
    let o = rsq(d.path(), &["simples", "loop.json", "--vertex", "a", "--shift", "-2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("irreducible within simples of shift -1..2: yes"));
}

#[test]
fn selfcheck_is_seeded() {
    let d = setup();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_rsq"))
            .args(["selfcheck", "--count", "3"])
            .env("RSQ_SEED", "9")
            .current_dir(d.path())
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("seed: 9"));
}

#[test]
fn exit_codes() {
    let d = setup();
    fs::write(d.path().join("bad.json"), "{ not json").unwrap();
    fs::write(d.path().join("dup.json"), r#"{"vertices":["a","a"],"arrows":[]}"#).unwrap();
    fs::write(d.path().join("split.json"), r#"{"vertices":["a","b"],"arrows":[]}"#).unwrap();
    assert_eq!(rsq(d.path(), &["analyze", "bad.json"]).status.code(), Some(2));
    assert_eq!(rsq(d.path(), &["analyze", "dup.json"]).status.code(), Some(2));
    assert_eq!(rsq(d.path(), &["analyze", "missing.json"]).status.code(), Some(2));
    let o = rsq(d.path(), &["analyze", "split.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
    assert_eq!(rsq(d.path(), &["analyze", "c3.json", "--bogus"]).status.code(), Some(64));
    assert_eq!(rsq(d.path(), &["cover", "a2.json", "--window", "1..3"]).status.code(), Some(64));
    assert_eq!(rsq(d.path(), &["--field", "fp:8", "analyze", "a2.json"]).status.code(), Some(64));
    assert_eq!(rsq(d.path(), &["frobnicate"]).status.code(), Some(64));
}
