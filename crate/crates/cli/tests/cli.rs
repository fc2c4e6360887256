use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn tmp(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("dcft-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn dcft(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcft"))
        .args(args)
        .arg("--output-dir")
        .arg(out)
        .env_remove("DCFT_SIZE_GUARD")
        .output()
        .expect("binary runs")
}

fn report(out: &Path, stem: &str) -> Value {
    let text = std::fs::read_to_string(out.join(format!("{stem}.json"))).expect("report written");
    serde_json::from_str(&text).expect("valid JSON")
}

fn value<'a>(v: &'a Value, name: &str) -> &'a str {
    v["report"]["verified"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["name"] == name)
        .unwrap_or_else(|| panic!("no value {name}"))["value"]
        .as_str()
        .unwrap()
}

#[test]
fn class_group_minus_23() {
    let d = tmp("cg");
    let o = dcft(&["class-group", "-23"], &d);
    assert_eq!(o.status.code(), Some(0));
    let v = report(&d, "class-group_-23");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(value(&v, "h"), "3");
    assert_eq!(value(&v, "Cl"), "Z/3");
    assert_eq!(v["pass"], true);
    for x in v["report"]["verified"].as_array().unwrap() {
        assert!(!x["provenance"].as_str().unwrap().is_empty());
    }
    let _ = std::fs::remove_dir_all(&d);
}

#[test]
fn verify_theorem_minus_20() {
    let d = tmp("vt");
    let o = dcft(&["verify-theorem", "-20", "--levels", "2,4,8"], &d);
    assert_eq!(o.status.code(), Some(0));
    let v = report(&d, "verify-theorem_-20");
    assert_eq!(value(&v, "pi_0 path A: Cl"), "Z/2");
    assert_eq!(value(&v, "pi_1 path B: lim O^x/n"), "Z/2");
    assert_eq!(v["config"]["levels"], serde_json::json!([2, 4, 8]));
    let predicted = v["report"]["predicted"].as_array().unwrap();
    assert!(!predicted.is_empty());
    assert!(predicted.iter().all(|p| p["verified"] == false));
    let _ = std::fs::remove_dir_all(&d);
}

#[test]
fn homology_of_trivial_group() {
    let d = tmp("hom");
    let o = dcft(&["homology", "trivial", "--max-degree", "3"], &d);
    assert_eq!(o.status.code(), Some(0));
    let v = report(&d, "homology_C1");
    for i in 1..=3 {
        assert_eq!(value(&v, &format!("H_{i}")), "0");
    }
    let _ = std::fs::remove_dir_all(&d);
}

#[test]
fn unstabilized_system_fails_with_exit_one() {
    let d = tmp("fail");
    let o = dcft(&["verify-theorem", "-23", "--levels", "2,3,6", "--pmax", "100"], &d);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&d, "verify-theorem_-23")["pass"], false);
    let _ = std::fs::remove_dir_all(&d);
}

#[test]
fn invalid_inputs_exit_two() {
    let d = tmp("bad");
    assert_eq!(dcft(&["class-group", "-12"], &d).status.code(), Some(2));
    assert_eq!(dcft(&["kummer", "-4", "--levels", "1,2"], &d).status.code(), Some(2));
    assert_eq!(dcft(&["homology", "no-such-group"], &d).status.code(), Some(2));
    assert_eq!(dcft(&["artin", "-4"], &d).status.code(), Some(2));
    assert_eq!(dcft(&["ray-class", "-4", "--modulus", "2,7,1"], &d).status.code(), Some(2));
    assert_eq!(dcft(&["not-a-command"], &d).status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&d);
}

#[test]
fn size_guard_exits_three_and_env_is_honoured() {
    let d = tmp("guard");
    assert_eq!(dcft(&["homology", "S3", "--size-guard", "10"], &d).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_dcft"))
        .args(["homology", "S3", "--output-dir"])
        .arg(&d)
        .env("DCFT_SIZE_GUARD", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let _ = std::fs::remove_dir_all(&d);
}

#[test]
fn flags_override_config_file() {
    let d = tmp("cfg");
    std::fs::create_dir_all(&d).unwrap();
    let cfg = d.join("run.toml");
    std::fs::write(&cfg, "size_guard = 5000\nmax_degree = 2\nformat = \"json\"\n").unwrap();
    let o = dcft(&["homology", "C2", "--config", cfg.to_str().unwrap()], &d);
    assert_eq!(o.status.code(), Some(0));
    let v = report(&d, "homology_C2");
    assert_eq!(v["config"]["size_guard"], 5000);
    assert_eq!(v["config"]["size_guard_source"], "config file");
    assert_eq!(v["config"]["max_degree"], 2);
    assert!(!d.join("homology_C2.txt").exists());
    let o = dcft(&["homology", "C2", "--config", cfg.to_str().unwrap(), "--max-degree", "4", "--size-guard", "7000"], &d);
    assert_eq!(o.status.code(), Some(0));
    let v = report(&d, "homology_C2");
    assert_eq!(v["config"]["size_guard"], 7000);
    assert_eq!(v["config"]["max_degree"], 4);
    assert_eq!(value(&v, "H_4"), "0");
    assert_eq!(value(&v, "H_3"), "Z/2");
    std::fs::write(&cfg, "no_such_key = 1\n").unwrap();
    assert_eq!(dcft(&["homology", "C2", "--config", cfg.to_str().unwrap()], &d).status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&d);
}

#[test]
fn remaining_commands_run() {
    let d = tmp("misc");
    assert_eq!(dcft(&["derived-ab", "Q8", "--max-degree", "2"], &d).status.code(), Some(0));
    let v = report(&d, "derived-ab_Q8");
    assert_eq!(value(&v, "pi_0"), "Z/2 + Z/2");
    assert_eq!(value(&v, "pi_1"), "0");

    assert_eq!(dcft(&["dold-thom", "wedge", "--sym-max", "3", "--degree", "1"], &d).status.code(), Some(0));
    assert_eq!(value(&report(&d, "dold-thom_wedge"), "H_1(Sym^3 X)"), "Z^2");

    assert_eq!(dcft(&["ray-class", "-4", "--modulus", "5"], &d).status.code(), Some(0));
    let v = report(&d, "ray-class_-4_5");
    assert_eq!(value(&v, "Cl_J"), "Z/4");
    assert_eq!(value(&v, "units = 1 mod J"), "0");

    assert_eq!(dcft(&["kummer", "-3", "--levels", "3"], &d).status.code(), Some(0));
    assert_eq!(value(&report(&d, "kummer_-3"), "H^1(mu_n)"), "Z/3");

    assert_eq!(dcft(&["artin", "-31", "--pmax", "3000"], &d).status.code(), Some(0));

    assert_eq!(dcft(&["functoriality", "S3", "C6:0,2,4"], &d).status.code(), Some(0));
    let v = report(&d, "functoriality");
    assert!(v["report"]["checks"].as_array().unwrap().len() > 6);

    assert_eq!(dcft(&["class-group", "--range", "-40..-30"], &d).status.code(), Some(0));
    let _ = std::fs::remove_dir_all(&d);
}
