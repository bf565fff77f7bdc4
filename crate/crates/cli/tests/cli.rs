use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nilquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilquad")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn ok(args: &[&str]) -> String {
    let o = nilquad(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nilquad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn group_normalize() {
    assert_eq!(ok(&["group", "normalize", "Z/6+Z/4"]), "Z/2 + Z/12");
    assert_eq!(ok(&["group", "normalize", "Z^2 + Z/4"]), "Z^2 + Z/4");
    assert_eq!(ok(&["group", "normalize", "0"]), "0");
}

#[test]
fn input_errors_exit_3_with_a_code() {
    for args in [&["group", "normalize", "Z/1"][..], &["functor", "eval", "--kind", "ext", "--a", "Z/2"], &["pi", "sphere", "--n", "0", "--k", "1"]] {
        let o = nilquad(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error["), "{args:?}");
    }
}

#[test]
fn sq_eval_both_agrees() {
    let out = ok(&["sq", "eval", "--n", "4", "--m", "2", "--a", "Z", "--d", "Z/2", "--mode", "both"]);
    assert!(out.ends_with("agree"), "{out}");
    let v: Value = serde_json::from_str(&ok(&["sq", "eval", "--n", "4", "--m", "2", "--d", "Z/2", "--mode", "both", "--json"])).unwrap();
    assert_eq!(v["verdict"], "agree");
    assert_eq!(v["closed"], v["oracle"]);
    // A ≠ Z goes through chain-level pseudo-homology.
    let v: Value = serde_json::from_str(&ok(&["sq", "eval", "--n", "3", "--m", "2", "--a", "Z/4", "--d", "Z/2", "--mode", "both", "--json"])).unwrap();
    assert_eq!(v["verdict"], "agree");
}

#[test]
fn pi_cells() {
    assert_eq!(ok(&["pi", "moore", "--a", "Z/4", "--n", "2", "--k", "2"]), "Z/2");
    assert_eq!(ok(&["pi", "sphere", "--cat", "nil4", "--n", "2", "--k", "3"]), "Z/6");
    let v: Value = serde_json::from_str(&ok(&["pi", "lie", "--p", "3", "--n", "1..2", "--k", "0..3", "--format", "json"])).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
}

#[test]
fn table_formats_carry_the_same_cells() {
    let args = |f: &'static str| ["sq", "table", "--d", "Z/2", "--max-m", "3", "--max-n", "5", "--format", f];
    let json: Value = serde_json::from_str(&ok(&args("json"))).unwrap();
    let cells = json["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 15);
    let csv = ok(&args("csv"));
    let md = ok(&args("md"));
    for c in cells {
        let g = c["group"].as_str().unwrap();
        let sym = c["symbolic"].as_str().unwrap();
        let needle = format!("{sym} = {g}");
        assert!(md.contains(&needle), "md lacks {needle}");
        assert!(csv.contains(g) && csv.contains(sym), "csv lacks {needle}");
    }
    let pi = |f: &'static str| ok(&["pi", "sphere", "--cat", "nil3", "--n", "1..3", "--k", "0..4", "--format", f]);
    let cells: Vec<Value> = serde_json::from_str(&pi("json")).unwrap();
    let csv = pi("csv");
    for c in &cells {
        let line = format!("{},{},{}", c["n"], c["k"], c["group"].as_str().unwrap());
        assert!(csv.lines().any(|l| l == line), "csv lacks {line}");
    }
}

#[test]
fn verify_sweep_report() {
    let o = nilquad(&["verify", "thm10", "--coeffs", "Z,Z/2", "--max-m", "2", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_agree"], true);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 2 * (3 + 4));
    assert!(cells.iter().all(|c| c["agree"] == true && c["millis"].is_u64()));
}

const WHITEHEAD: &str = r#"{"schema": "nilquad.bype/1", "B": {"1": "Z/2", "2": "Z/4", "3": "Z"}}"#;

#[test]
fn bype_pipeline() {
    let x = scratch("zero.json", WHITEHEAD);
    let v: Value = serde_json::from_str(&ok(&["bype", "validate", x.to_str().unwrap()])).unwrap();
    assert_eq!(v["valid"], true);
    let stable = ok(&["bype", "stabilize", x.to_str().unwrap()]);
    let s = scratch("stable.json", &stable);
    let f = scratch("f.json", &ok(&["bype", "theta", s.to_str().unwrap()]));
    assert_eq!(ok(&["bype", "theta", "--inverse", f.to_str().unwrap()]), stable);
    let m: Value = serde_json::from_str(&ok(&["bype", "morphism", x.to_str().unwrap(), x.to_str().unwrap()])).unwrap();
    assert_eq!(m["morphism"], true);
    let m: Value = serde_json::from_str(&ok(&["bype", "morphism", f.to_str().unwrap(), f.to_str().unwrap()])).unwrap();
    assert_eq!(m["morphism"], true);
}

#[test]
fn invalid_bype_exits_2() {
    // μβ₃ must equal b₃; β₃ = 0 while b₃ ≠ 0 breaks that.
    let bad = r#"{"schema": "nilquad.bype/1", "B": {"1": "Z/2", "2": "Z/4", "3": "Z"}, "b": {"3": [["1"]]}, "beta": {"3": ["0"]}}"#;
    let p = scratch("bad.json", bad);
    let o = nilquad(&["bype", "validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    let unknown = scratch("unknown.json", r#"{"schema": "nilquad.bype/7", "B": {}}"#);
    assert_eq!(nilquad(&["bype", "validate", unknown.to_str().unwrap()]).status.code(), Some(3));
}
