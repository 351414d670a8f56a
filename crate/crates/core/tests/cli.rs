//! Runs the compiled binary and checks exit codes, streams and JSON shapes.

use std::process::Command;

use serde_json::Value;

fn svbraid(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_svbraid")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn equiv_exit_codes() {
    assert_eq!(svbraid(&["equiv", "--n", "2", "s1 s1'", "e"]).0, 0);
    assert_eq!(svbraid(&["equiv", "--n", "2", "s1", "t1"]).0, 3);
    assert_eq!(
        svbraid(&["equiv", "--n", "3", "--budget", "3", "s1 s2 s1 s2 s1 s2", "s2 s1 s2 s1 s2 s1"]).0,
        4
    );
}

#[test]
fn usage_and_domain_errors() {
    let (code, out, err) = svbraid(&["parse", "--n", "3", "s7"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("s7"));
    assert_eq!(svbraid(&["parse", "s1"]).0, 2);
    assert_eq!(svbraid(&["verify", "bogus"]).0, 2);
    assert_eq!(svbraid(&["equiv", "--n", "2", "--max-len", "0", "e", "e"]).0, 2);
}

#[test]
fn json_shapes() {
    // the inverse suffix is only legal on classical letters
    assert_eq!(svbraid(&["to-gauss", "--n", "3", "--format", "json", "s1 t2'"]).0, 1);

    let (code, out, _) = svbraid(&["to-gauss", "--n", "3", "--format", "json", "s1 t2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["arrows"][0]["kind"], "+");
    assert_eq!(v["arrows"][1]["kind"], "s");
    assert_eq!(v["perm"], serde_json::json!([3, 1, 2]));

    let (_, out, _) = svbraid(&["desing", "--n", "2", "--format", "json", "t1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, serde_json::json!([{"coeff": 1, "word": "s1"}, {"coeff": -1, "word": "s1'"}]));

    let (_, out, _) = svbraid(&["genus", "--n", "3", "--format", "json", "r1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["genus"], 1);

    let (_, out, _) = svbraid(&["decompose", "--n", "3", "--format", "json", "r1 s2"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pure"], "X+1,3");
    assert_eq!(v["perm"], serde_json::json!([3, 1, 2]));

    let (_, out, _) = svbraid(&["equiv", "--n", "3", "--format", "json", "r1 t2 r1", "r2 t1 r2"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "equivalent");
    assert_eq!(v["trace"][0]["relation"], "SV2");
}

#[test]
fn verify_suites_pass() {
    for suite in ["relations", "gauss-roundtrip", "degree-lemma", "sp-relations", "scalar-preimage", "surface"] {
        let (code, out, err) = svbraid(&["verify", suite, "--n", "3", "--seed", "7"]);
        assert_eq!(code, 0, "{suite}: {out}{err}");
        assert!(out.lines().all(|l| !l.starts_with("FAIL")), "{out}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "degree-lemma", "--n", "5", "--seed", "7", "--format", "json"];
    assert_eq!(svbraid(&args), svbraid(&args));
}
