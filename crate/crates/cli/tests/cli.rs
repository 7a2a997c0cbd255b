use std::process::{Command, Output};

fn bicyclic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicyclic"))
        .args(args)
        .env_remove("BICYCLIC_CAP")
        .output()
        .expect("binary runs")
}

#[test]
fn table_json_has_one_record_per_grid_point() {
    let out = bicyclic(&["table", "--g", "1..2", "--r", "2..3"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 4);
    for rec in records {
        assert_eq!(rec["status"], "ok");
        assert!(rec["violations"].as_array().unwrap().is_empty());
    }
}

#[test]
fn empty_range_is_a_config_error() {
    let out = bicyclic(&["table", "--g", "3..2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty range"));
}

#[test]
fn unknown_flag_is_a_config_error() {
    assert_eq!(bicyclic(&["table", "--genus", "2"]).status.code(), Some(2));
}

#[test]
fn cap_hit_skips_and_exits_three() {
    let out = bicyclic(&["table", "--g", "2", "--r", "5", "--cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["records"][0]["status"], "skipped");
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bicyclic"))
        .args(["verify-g", "--g", "2", "--r", "5"])
        .env("BICYCLIC_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn csv_output_has_header_and_rows() {
    let out = bicyclic(&["table", "--g", "2", "--r", "2..3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("g,r,d,"));
}

#[test]
fn out_file_holds_the_report() {
    let path = std::env::temp_dir().join(format!("bicyclic-out-{}.json", std::process::id()));
    let path_str = path.to_str().unwrap();
    let to_file = bicyclic(&["table", "--g", "2", "--r", "3", "--out", path_str]);
    assert_eq!(to_file.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let file: serde_json::Value = serde_json::from_slice(&written).unwrap();
    let stdout: serde_json::Value =
        serde_json::from_slice(&bicyclic(&["table", "--g", "2", "--r", "3"]).stdout).unwrap();
    assert_eq!(file["records"], stdout["records"]);
    assert_eq!(file["config"]["out"], path_str);
}

#[test]
fn bogomolov_and_components_listings() {
    let out = bicyclic(&["bogomolov", "--g", "2", "--r", "2", "--family", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let listing: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(listing["command"], "bogomolov");

    let out = bicyclic(&["components", "--g", "2", "--r", "6", "--d", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let listing: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rec = &listing["records"][0];
    assert_eq!(rec["quotient_components"], 2);
    assert_eq!(rec["prym_components"], 6);
}

#[test]
fn selftest_passes_and_detects_injected_fault() {
    let clean = bicyclic(&["selftest", "--seed", "5"]);
    assert_eq!(clean.status.code(), Some(0));
    let faulty = bicyclic(&["selftest", "--seed", "5", "--inject-fault", "flip-weil-coefficient"]);
    assert_eq!(faulty.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&faulty.stdout).contains("FAIL weil_nondegeneracy"));
}
