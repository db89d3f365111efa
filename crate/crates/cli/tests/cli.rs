use std::process::{Command, Output};

fn cohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const S7: &str = "K-=C(i,1,1)*H; K+=C(j,1,3)*H; H=gen{(i,i),(j,-j)}";

#[test]
fn weyl_prints_type() {
    let o = cohom(&["weyl", "--diagram", S7]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "D6");
}

#[test]
fn topology_from_slopes() {
    let o = cohom(&["topology", "--family", "P", "--slopes", "1,1,3,5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "pi3 = Z_2"));
    let o = cohom(&["topology", "--family", "N", "--slopes", "3,1,1,2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["H4"]["torsion"][0], serde_json::json!(35));
}

#[test]
fn obstruct_exit_codes() {
    assert_eq!(cohom(&["obstruct", "--diagram", S7]).status.code(), Some(0));
    let o = cohom(&["obstruct", "--json", "--diagram", "K-=C(i,1,1)*H; K+=C(j,1,5)*H; H=gen{(i,i),(j,-j)}"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["overall"]["check"], "weight_plus");
    assert_eq!(v["verdicts"]["weight_plus"]["status"], "fail");
}

#[test]
fn validation_failure_and_usage_errors() {
    let not_sphere = "K-=DS3*H; K+=C(i,1,1); H=gen{(-1,-1)}";
    assert_eq!(cohom(&["validate", "--diagram", not_sphere]).status.code(), Some(1));
    assert_eq!(cohom(&["validate", "--diagram", "K-=C(i,1"]).status.code(), Some(2));
    assert_eq!(cohom(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cohom(&["scan", "--bound", "5", "--h-type", "Q9"]).status.code(), Some(2));
    assert_eq!(cohom(&["topology", "--family", "P", "--slopes", "1,1,3"]).status.code(), Some(2));
}

#[test]
fn scan_json_report() {
    let o = cohom(&["scan", "--bound", "5", "--h-type", "Q", "--json", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let labels: Vec<&str> = v["survivors"].as_array().unwrap().iter().map(|s| s["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["B7", "P_1", "P_2"]);
}

#[test]
fn hitchin_json_shape() {
    let o = cohom(&["hitchin", "--k", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["k"], 3);
    assert_eq!(v["antiselfdual"], serde_json::json!([[1, -1], [3, 5]]));
    let families: Vec<&str> = v["identifications"].as_array().unwrap().iter().filter_map(|i| i["family"].as_str()).collect();
    assert_eq!(families, ["P_2", "B7"]);
}

#[test]
fn lookup_rows() {
    let o = cohom(&["lookup", "P_k", "--k", "1"]);
    assert!(stdout(&o).contains("note: P_1 = S^7"));
    let o = cohom(&["lookup", "R"]);
    assert!(stdout(&o).contains("C(i,3,1)") && stdout(&o).contains("C(j,1,2)"));
    assert_eq!(cohom(&["lookup", "B13"]).status.code(), Some(2));
}
