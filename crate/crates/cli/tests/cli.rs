use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitcode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const UNION_SPEC: &str =
    r#"{"q":2,"n":2,"k":3,"l":2,"N":8,"trinomials":[[1,[0,1]],[1,[1,1]]],"binomial":null}"#;
const DUPLICATED_SPEC: &str =
    r#"{"q":2,"n":1,"k":3,"l":1,"N":7,"trinomials":[[1,1],[1,1]],"binomial":null}"#;
const SPREAD_SPEC: &str = r#"{"q":2,"n":1,"k":3,"l":1,"N":6,"trinomials":[],"binomial":1}"#;
const LARGE_SPEC: &str =
    r#"{"q":3,"n":1,"k":5,"l":1,"N":78,"trinomials":[[1,1]],"binomial":null}"#;

#[test]
fn table31_json_lists_sixteen_rows() {
    let out = run(&["table31", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    let degrees: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["degree"].as_u64().unwrap())
        .collect();
    assert_eq!(
        degrees,
        vec![78, 78, 242, 121, 80, 104, 104, 80, 80, 80, 104, 104, 78, 121, 242, 78]
    );
    assert_eq!(v["minimal"], serde_json::json!([78, 121, 80, 104]));
}

#[test]
fn table32_with_pinned_presentation() {
    let field = r#"{"p":2,"tower":[1,5],"defining_poly":[1,0,1,0,0,1],"generator":[0,1]}"#;
    let out = run(&["table32", "--field-spec", field, "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lcms: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(lcms, vec!["30", "70", "75", "60"]);
}

#[test]
fn degree_command() {
    let out = run(&["degree", "--q", "3", "--poly", r#"{"q_coeffs":[[5,1],[1,1],[0,1]]}"#]);
    assert!(out.status.success());
    assert_eq!(json(&out)["splitting_degree"], 78);
}

#[test]
fn degree_cap_exit_code() {
    let out = run(&[
        "degree",
        "--q",
        "3",
        "--poly",
        r#"{"q_coeffs":[[5,1],[1,-1],[0,1]]}"#,
        "--cap",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn precondition_exit_code() {
    let out = run(&["degree", "--q", "3", "--poly", r#"{"q_coeffs":[[5,1],[1,1]]}"#]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["certify", "--spec", DUPLICATED_SPEC]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["table31", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn union_instance_certifies() {
    let out = run(&["certify", "--spec", UNION_SPEC, "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "certified");
    assert_eq!(v["observed_size"], 510);
    assert_eq!(v["claimed_size"], "510");
    assert_eq!(v["observed_min_distance"], 4);
    assert_eq!(v["max_intersection_dim"], 1);
}

#[test]
fn spread_instance_certifies() {
    let out = run(&["certify", "--spec", SPREAD_SPEC, "--format", "markdown"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| verdict | certified |"));
    assert!(text.contains("| observed_min_distance | 6 |"));
}

#[test]
fn planted_duplicate_is_falsified() {
    let out = run(&["certify", "--spec", DUPLICATED_SPEC, "--skip-preconditions"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["verdict"], "falsified");
    assert_eq!(v["witness"].as_array().unwrap().len(), 2);
    assert_eq!(v["witness"][0], v["witness"][1]);
}

#[test]
fn sampled_run_is_deterministic() {
    let args = [
        "certify", "--spec", LARGE_SPEC, "--mode", "sampled", "--samples", "200", "--seed", "11",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(3));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 11);
}

#[test]
fn exact_run_is_deterministic_across_thread_counts() {
    let a = run(&["certify", "--spec", UNION_SPEC, "--threads", "1"]);
    let b = run(&["certify", "--spec", UNION_SPEC, "--threads", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn spec_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(&path, SPREAD_SPEC).unwrap();
    let out = run(&["certify", "--spec", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("mode,verdict,"));
}

#[test]
fn sweep_lists_small_degrees() {
    let out = run(&["sweep", "--q", "3", "--k", "2", "--l", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let degrees: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(degrees, vec!["3", "8", "6", "8"]);
}
