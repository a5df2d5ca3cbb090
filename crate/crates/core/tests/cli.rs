use serde_json::Value;
use std::process::Command;

fn qwedge(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_qwedge")).args(args).output().expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

#[test]
fn gamma_a2() {
    let (code, v) = qwedge(&["gamma", "--type", "a2even", "--rank", "1", "--n", "1"]);
    assert_eq!(code, 0);
    // (1−q⁶)/(1−q⁴) in lowest terms
    assert_eq!(v["text"], "(1+q^2+q^4)/(1+q^2)");
    assert!(v["series"].as_str().unwrap().starts_with("1q^0 + 1q^4 - 1q^6"));
}

#[test]
fn straighten_normal_word_is_identity() {
    let dir = std::env::temp_dir().join(format!("qwedge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("w.json");
    std::fs::write(&p, r#"[{"word":[[1,0],[0,0]],"coeff":{"num":[[0,"1","1"]],"den":[[0,"1","1"]]}}]"#).unwrap();
    let (code, v) = qwedge(&["straighten", "--type", "a1", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["identity"], true);
    // output parses back as input
    let out = dir.join("out.json");
    let (code, _) = qwedge(&["straighten", "--type", "a1", "--input", p.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, v) = qwedge(&["straighten", "--type", "a1", "--input", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["identity"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_twopoint_b1() {
    let (code, v) = qwedge(&["verify", "--suite", "twopoint", "--type", "b1", "--rank", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["criterion"] == 3));
}

#[test]
fn usage_errors() {
    assert_eq!(qwedge(&["gamma", "--type", "b1", "--rank", "2", "--n", "1"]).0, 2);
    assert_eq!(qwedge(&["gamma", "--type", "e8", "--n", "1"]).0, 2);
    assert_eq!(qwedge(&["verify", "--suite", "nonsense"]).0, 2);
    assert_eq!(qwedge(&["young", "--n", "1", "--op", "f", "--i", "0", "--diagram", "1,2"]).0, 2);
}

#[test]
fn young_and_dtwo() {
    let (code, v) = qwedge(&["young", "--n", "1", "--op", "norm", "--diagram", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["text"], "1+q^2");
    let (code, v) = qwedge(&["dtwo", "--n", "2", "--check", "normalization"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["ok"], true);
}
