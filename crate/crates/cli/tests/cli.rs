use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn cwilf(args: &[&str]) -> Output {
    cwilf_env(args, &[])
}

fn cwilf_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cwilf"));
    cmd.args(args).env_remove("CWILF_CACHE").env_remove("CWILF_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn stats_and_reduce() {
    let v = json(&cwilf(&["stats", "938471625"]));
    assert_eq!(v["lrmin"], 3);
    assert_eq!(v["des"], 4);
    assert_eq!(json(&cwilf(&["reduce", "53962"])), "32541");
    assert_eq!(json(&cwilf(&["reduce", "10,40,20"])), "132");
}

#[test]
fn iu_check_passes() {
    let out = cwilf(&["iu", "--pattern", "13542", "--n", "9", "--check", "thm-key"]);
    let v = json(&out);
    assert_eq!(v["check"]["agree"], true);
    assert_eq!(v["series"]["coeffs"].as_array().unwrap().len(), 10);
}

#[test]
fn exit_codes() {
    assert_eq!(cwilf(&["bogus"]).status.code(), Some(2));
    assert_eq!(cwilf(&["stats", "1223"]).status.code(), Some(2));
    assert_eq!(cwilf(&["iu", "--pattern", "1423", "--n", "4"]).status.code(), Some(2));
    assert_eq!(cwilf(&["inm", "--set", "132", "--n", "10"]).status.code(), Some(3));
    assert_eq!(cwilf_env(&["inm", "--set", "132", "--n", "6"], &[("CWILF_BUDGET", "5")]).status.code(), Some(3));
    assert_eq!(cwilf(&["--budget", "10", "inm", "--set", "132", "--n", "10"]).status.code(), Some(0));
    assert_eq!(
        cwilf(&["recur", "--family", "br-gamma-k1k2", "--k1", "2", "--k2", "3", "--n", "5"]).status.code(),
        Some(2)
    );
}

#[test]
fn recur_with_oracle() {
    let v = json(&cwilf(&["recur", "--family", "br-1324p-12p", "--p", "5", "--n", "8", "--check-oracle"]));
    assert_eq!(v["check"]["agree"], true);
    assert_eq!(v["family"]["family"], "br-1324p-12p");
}

#[test]
fn output_formats() {
    let pretty = cwilf(&["--format", "pretty", "iu", "--pattern", "1342", "--n", "2"]);
    let text = String::from_utf8(pretty.stdout).unwrap();
    assert!(text.contains("[2] z^2 - z"), "{text}");
    let csv = cwilf(&["--format", "csv", "iu", "--pattern", "1342", "--n", "2"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("path,term,value\n"), "{text}");
    assert!(text.contains("series.coeffs.2,z^2,1\n"), "{text}");
    assert!(text.contains("series.coeffs.2,z,-1\n"), "{text}");
}

#[test]
fn cache_hits_are_identical_and_corruption_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let env = [("CWILF_CACHE", dir.path().to_str().unwrap())];
    let args = ["inm", "--set", "1324", "--n", "7"];
    let fresh = cwilf(&args);
    let cold = cwilf_env(&args, &env);
    let warm = cwilf_env(&args, &env);
    assert_eq!(cold.stdout, fresh.stdout);
    assert_eq!(warm.stdout, fresh.stdout);

    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    let original = fs::read_to_string(&entries[0]).unwrap();
    // Change one coefficient without touching the stored digest.
    let tampered = original.replacen("\"c\":\"1\"", "\"c\":\"2\"", 1);
    assert_ne!(tampered, original);
    fs::write(&entries[0], &tampered).unwrap();
    let after = cwilf_env(&args, &env);
    assert_eq!(after.stdout, fresh.stdout);
    assert_eq!(fs::read_to_string(&entries[0]).unwrap(), original);
}

#[test]
fn classify_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("pats.txt");
    fs::write(&list, "# length five\n13542\n14352\n14532 # trailing comment\n15342\n").unwrap();
    let out_path = dir.path().join("report.json");
    let out = cwilf(&[
        "classify",
        "--patterns",
        list.to_str().unwrap(),
        "--stats",
        "des,inv",
        "--n",
        "8",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    let v = json(&out);
    assert_eq!(v["classes"], serde_json::json!([["13542", "14352"], ["14532", "15342"]]));
    let written: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(written, v);
    let des_only = json(&cwilf(&["classify", "--patterns", list.to_str().unwrap(), "--stats", "des", "--n", "8"]));
    assert_eq!(des_only["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn tabloids_listing_and_verification() {
    let v = json(&cwilf(&["tabloids", "--set", "1324", "--n", "5", "--verify"]));
    assert_eq!(v["fixed_sum_equals_iu"], true);
    assert_eq!(v["involutive"], true);
    let fixed = json(&cwilf(&["tabloids", "--set", "1324", "--n", "5", "--fixed-only"]));
    assert_eq!(fixed["count"], v["fixed_points"]);
    let all = json(&cwilf(&["tabloids", "--set", "1324", "--n", "3"]));
    assert_eq!(all["count"], 24);
    assert_eq!(cwilf(&["tabloids", "--set", "1324", "--n", "9"]).status.code(), Some(3));
}

#[test]
fn phi_and_family() {
    let v = json(&cwilf(&["phi", "--alpha", "14532", "--beta", "15342", "--sigma", "14532"]));
    assert_eq!(v["image"], "15342");
    assert_eq!(json(&cwilf(&["family", "t", "--blocks", "1", "--variant", "1"])), "14532");
    assert_eq!(json(&cwilf(&["family", "t", "--blocks", "1", "--variant", "2"])), "15342");
    let all = json(&cwilf(&["family", "s", "--blocks", "2"]));
    assert_eq!(all.as_array().unwrap().len(), 4);
    assert_eq!(cwilf(&["family", "t", "--blocks", "2", "--variant", "13"]).status.code(), Some(2));
    assert_eq!(
        cwilf(&["phi", "--alpha", "14253", "--beta", "15243", "--sigma", "12345"]).status.code(),
        Some(2)
    );
}

#[test]
fn overlap_commands() {
    let v = json(&cwilf(&["minoverlap", "14253"]));
    assert_eq!(v["verdict"], false);
    assert_eq!(v["method"], "definition-scan");
    let fast = json(&cwilf(&["minoverlap", "14253", "--method", "fast"]));
    assert_eq!(fast["method"], "prefix-suffix-criterion");
    assert_eq!(fast["verdict"], false);
    let m = json(&cwilf(&["mutual", "14532", "15342"]));
    assert_eq!(m["verdict"], true);
    let p = json(&cwilf(&["packings", "132", "--n", "2"]));
    assert_eq!(p["rows"].as_array().unwrap().len(), 2);
    let pos = json(&cwilf(&["match", "--set", "132", "13254"]));
    assert_eq!(pos["positions"], serde_json::json!([1, 3]));
}
