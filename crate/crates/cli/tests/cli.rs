use std::process::{Command, Output};

use serde_json::Value;

fn hcstem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcstem")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    hcstem(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> (String, Value) {
    let out = hcstem(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    (text, value)
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["pair", "--g", "A3", "--substem", "2"]), 0);
    assert_eq!(code(&["pair", "--g", "B3", "--substem", "none"]), 1);
    assert_eq!(code(&["pair", "--g", "A3", "--substem", "1"]), 2);
    assert_eq!(code(&["pair", "--g", "A3", "--substem", "1,2"]), 1);
    assert_eq!(code(&["pair", "--g", "Q3"]), 2);
    assert_eq!(code(&["pair", "--g", "A3", "--substem", "7"]), 2);
    assert_eq!(code(&["pair"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["build", "--g", "A2", "--rho", "1/2"]), 2);
    assert_eq!(code(&["build", "--g", "A3", "--substem", "2", "--rho", "1,i,1"]), 2);
    assert_eq!(code(&["build", "--g", "B2"]), 2);
    assert_eq!(code(&["audit", "--type", "E6"]), 0);
    assert_eq!(code(&["enumerate", "--max-dim", "12"]), 0);
}

#[test]
fn json_round_trips_byte_identically() {
    let commands: &[&[&str]] = &[
        &["stem", "--type", "E6", "--json"],
        &["stem", "--type", "c^2 x A3 x G2", "--json"],
        &["audit", "--type", "D5", "--json"],
        &["pair", "--g", "A4", "--substem", "2", "--json"],
        &["build", "--g", "A2", "--rho", "i", "--operators", "--json"],
        &["enumerate", "--max-dim", "32", "--json"],
    ];
    for args in commands {
        let (text, value) = json(args);
        let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
        assert_eq!(text, again, "{args:?}");
    }
}

#[test]
fn stem_of_e6() {
    let (_, v) = json(&["stem", "--type", "E6", "--json"]);
    assert_eq!(v["srank"], 8);
    assert_eq!(v["stem"].as_array().unwrap().len(), 4);
    let edges: Vec<(u64, u64)> =
        v["hasse_edges"].as_array().unwrap().iter().map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap())).collect();
    assert_eq!(edges, [(1, 2), (2, 3), (3, 4)]);
}

#[test]
fn pair_verdict_and_deficiency() {
    let (_, v) = json(&["pair", "--g", "A3", "--substem", "2", "--json"]);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["deficiency"], 0);
    assert_eq!(v["dim_diff"], 12);
}

#[test]
fn enumerate_twelve() {
    let (_, v) = json(&["enumerate", "--max-dim", "12", "--json"]);
    let names: Vec<&str> =
        v["spaces"].as_array().unwrap().iter().map(|s| s["factors"][0]["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["SU(3)", "SU(4)/SU(2)"]);
}

#[test]
fn build_with_per_element_phases() {
    let out = hcstem(&["build", "--g", "A4", "--substem", "2", "--rho", "i,(1/2)√2 + (1/2)i√2", "--json"]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|_| panic!("{stderr}"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["ok"], true);
    assert_eq!(v["dim_p"], 16);
}

#[test]
fn dot_file_is_written() {
    let path = std::env::temp_dir().join(format!("hcstem-d5-{}.dot", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(code(&["stem", "--type", "D5", "--dot", p]), 0);
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 3);
}
