use std::process::{Command, Output};

use serde_json::Value;

fn projdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projdet"))
        .args(args)
        .env_remove("PROJDET_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn empty_character_table() {
    let out = projdet(&["chars", "--n", "0"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "\"R\",\"\"\n\"\",1\n");
}

#[test]
fn character_table_json_has_schema() {
    let v = stdout_json(&projdet(&["chars", "--n", "3", "--format", "json"]));
    assert_eq!(v["schema"], "1");
    assert_eq!(v["partitions"], serde_json::json!(["3", "2,1", "1,1,1"]));
}

#[test]
fn k_star_rows() {
    let v = stdout_json(&projdet(&["kstar", "--n-max", "14"]));
    assert_eq!(v["schema"], "1");
    let got: Vec<(u64, u64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["k_star"].as_u64().unwrap()))
        .collect();
    let want: Vec<(u64, u64)> = (2..=14).map(|n| (n, if n <= 5 || n == 7 { 2 } else { 3 })).collect();
    assert_eq!(got, want);
}

#[test]
fn detects_three_three() {
    let v = stdout_json(&projdet(&["detect", "zcsn", "--n", "6", "--r", "3,3", "--seed", "7", "--json"]));
    assert_eq!(v["identified_label"], "3,3");
    assert_eq!(v["true_label"], "3,3");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["rounds"][0]["decoded"], 3);
}

#[test]
fn json_is_byte_identical_for_same_arguments() {
    for args in [
        &["detect", "zcsn", "--n", "7", "--r", "4,2,1", "--seed", "3", "--json"][..],
        &["detect", "classical", "--n", "5", "--r", "3,2", "--seed", "9"],
        &["detect", "kron", "--n", "4", "--triple", "3,1;3,1;2,2", "--seed", "2"],
        &["holo", "roundtrip", "--n", "5", "--capital-n", "6", "--rho", "2"],
    ] {
        let a = projdet(args);
        let b = projdet(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_projdet"))
        .args(["detect", "zcsn", "--n", "4", "--r", "2,2", "--json"])
        .env("PROJDET_SEED", "1234")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["seed"], 1234);
    let out = projdet(&["detect", "zcsn", "--n", "4", "--r", "2,2", "--json"]);
    assert_eq!(stdout_json(&out)["seed"], 0x5eed);
}

#[test]
fn malformed_partition_is_a_usage_error() {
    let out = projdet(&["detect", "zcsn", "--n", "6", "--r", "3,x,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`x`"));
    let out = projdet(&["detect", "zcsn", "--n", "6", "--r", "1,2,3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = projdet(&["kron", "--n", "3", "--triple", "3;3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = projdet(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_coefficient_label_fails_detection() {
    let out = projdet(&["detect", "kron", "--n", "3", "--triple", "3;3;1,1,1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = projdet(&["detect", "lr", "--m", "2", "--n", "1", "--triple", "2;1;1,1,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lr_detection_and_tables() {
    let v = stdout_json(&projdet(&["detect", "lr", "--m", "2", "--n", "2", "--triple", "1,1;2;3,1"]));
    assert_eq!(v["identified_label"], "1,1;2;3,1");
    assert_eq!(v["m"], 2);
    let out = projdet(&["lr", "--m", "1", "--n", "1", "--table"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "triple,coefficient\n\"1;1;2\",1\n\"1;1;1,1\",1\n");
    let v = stdout_json(&projdet(&["kron", "--n", "5"]));
    assert_eq!(v["dimension"], v["ribbon_count"]);
}

#[test]
fn holographic_commands() {
    let v = stdout_json(&projdet(&["holo", "roundtrip", "--n", "6", "--capital-n", "7"]));
    assert_eq!(v["all_recovered"], true);
    assert_eq!(v["lambda"], 3);
    assert_eq!(v["round_trips"].as_array().unwrap().len(), 11);
    let out = projdet(&["holo", "cutoff-table", "--n-max", "6"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,N,moment_cutoff,k_star\n"));
    assert!(text.ends_with("6,7,3,3\n"));
    assert_eq!(stdout_json(&projdet(&["holo", "cost", "--lambda", "255", "--beta", "0"]))["case"], 1);
    assert_eq!(stdout_json(&projdet(&["holo", "cost", "--lambda", "255", "--beta", "2"]))["case"], 2);
}

#[test]
fn profile_csv_and_output_file() {
    let dir = std::env::temp_dir().join(format!("projdet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("profile.csv");
    let json = dir.join("trip.json");
    let out = projdet(&[
        "holo",
        "roundtrip",
        "--n",
        "3",
        "--capital-n",
        "4",
        "--r",
        "2,1",
        "--profile-csv",
        csv.to_str().unwrap(),
        "--output",
        json.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let profile = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(profile.lines().count(), 1 + 6);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["round_trips"][0]["recovered"], "2,1");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn report_rows() {
    let v = stdout_json(&projdet(&["report", "--n-max", "6"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4]["n"], 6);
    assert_eq!(rows[4]["qpe_queries"], 12);
}
