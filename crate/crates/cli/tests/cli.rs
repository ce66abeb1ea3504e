use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn purecomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_purecomp")).args(args).output().expect("run purecomp")
}

fn input(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const Z12: &str = "ring R = Z/12\nmodule M over R presented by [[4, 0], [0, 6]]\n";

#[test]
fn decompose_reports_canonical_and_indecomposable_parts() {
    let f = input(Z12);
    let out = purecomp(&["decompose", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["canonical"], serde_json::json!(["(0)", "(2)"]));
    assert_eq!(v["indecomposable"].as_array().unwrap().len(), 3);
    assert_eq!(v["mu"], 2);
}

#[test]
fn series_enumeration_has_one_length() {
    let f = input(Z12);
    let out = purecomp(&["series", f.path().to_str().unwrap(), "--enumerate"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["enumeration"]["count"], "12");
    assert_eq!(v["enumeration"]["lengths"], serde_json::json!([3]));
}

#[test]
fn goldie_agrees_with_bruteforce() {
    let f = input(Z12);
    let out = purecomp(&["goldie", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["dimension"], v["bruteforce"]);
}

#[test]
fn reduce_prints_transforms() {
    let f = input(Z12);
    let out = purecomp(&["reduce", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v[0]["D"].is_array() && v[0]["U"].is_array());
}

#[test]
fn syntax_error_is_a_usage_failure() {
    let f = input("ring R = Z/12\nmodule M over R presented by [[4, 0], [0 6]]\n");
    let out = purecomp(&["decompose", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error at 2:"));
}

#[test]
fn missing_file_and_bad_ring_exit_2() {
    assert_eq!(purecomp(&["decompose", "/nonexistent/m.pc"]).status.code(), Some(2));
    assert_eq!(purecomp(&["verify", "Z/1"]).status.code(), Some(2));
}

#[test]
fn verify_small_ring_passes() {
    let out = purecomp(&["verify", "Z/4", "--max-size", "16"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn counterexample_rd_vs_pure() {
    let out = purecomp(&["counterexample", "--part", "rd-vs-pure"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["rd_vs_pure"]["rd"], true);
    assert_eq!(v["rd_vs_pure"]["pure"], false);
}
