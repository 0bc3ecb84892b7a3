use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subcomm"))
        .args(args)
        .env_remove("SUBCOMM_CACHE")
        .env_remove("SUBCOMM_MAX_ORDER")
        .env_remove("SUBCOMM_JOBS")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    assert!(code(&o) <= 1, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn sd_text_and_json() {
    let o = run(&["sd", "A4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("sd(A4) = 16/25"));
    let v = json(&["sd", "S3"]);
    assert_eq!(v["schema"], "subcomm.sd/1");
    assert_eq!(v["value"], "5/6");
    assert_eq!(v["pair_count"], 30);
}

#[test]
fn relative_pair_and_nary() {
    assert_eq!(json(&["sd-rel", "S3", "alternating"])["value"], "1");
    assert_eq!(json(&["sd-rel", "D8", "<y>"])["value"], "9/10");
    assert_eq!(json(&["sd-pair", "S3", "<(1,2)>", "<(1,3)>"])["value"], "3/4");
    let v = json(&["sd-nary", "S3", "<(1,2)>"]);
    assert_eq!(v["value"], "1");
    assert_eq!(json(&["d", "S3"])["value"], "1/2");
    let b = json(&["sd", "S3", "--breakdown"]);
    assert_eq!(b["breakdown"].as_array().unwrap().len(), 6);
}

#[test]
fn csv_output() {
    let o = run(&["zm-sweep", "ZM(3,2,2)", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,n,r,m1,n1,s,gcd_s_m1,order,normal,sd"));
    assert_eq!(lines.count(), 6);
    let o = run(&["lattice", "S3", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn zm_sweep_json_is_job_independent() {
    let a = run(&["zm-sweep", "--max-mn", "40", "--format", "json", "--jobs", "1"]);
    let b = run(&["zm-sweep", "--max-mn", "40", "--format", "json", "--jobs", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "subcomm.zm-sweep/1");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["sd", "Q8"][..],
        &["sd", "ZM(4,2,3)"],
        &["sd-rel", "S3", "<(1,2,3,4)>"],
        &["sd-rel", "S3", "99"],
        &["verify", "--suite", "nope", "S3"],
        &["zm-sweep", "S3"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = run(&["sd", "D7"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));
}

#[test]
fn caps_exit_3() {
    assert_eq!(code(&run(&["sd", "S6", "--max-order", "100"])), 3);
    assert_eq!(code(&run(&["sd", "S6", "--oracle"])), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_subcomm"))
        .args(["lattice", "A5"])
        .env("SUBCOMM_MAX_ORDER", "30")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert_eq!(code(&run(&["verify", "S6xZ2", "--suite", "conjugacy"])), 3);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&run(&["verify", "S3", "A4", "--suite", "conjugacy,bounds,maximal-identity"])), 0);
    // the literal modular-and-subnormal characterization fails at H = G
    let o = run(&["verify", "S3", "--suite", "sd-one"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("sd-one-iff-modular-and-subnormal"));
}

#[test]
fn verify_json_is_deterministic() {
    let a = run(&["verify", "--format", "json", "--jobs", "4"]);
    let b = run(&["verify", "--format", "json", "--jobs", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "subcomm.verify/1");
    assert_eq!(v["groups"].as_array().unwrap().len(), 48);
}

#[test]
fn oracle_flag() {
    let o = run(&["sd", "S4", "--oracle"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn cache_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = run(&["lattice", "S4", "--cache", d, "-v", "--format", "json"]);
    assert!(String::from_utf8_lossy(&first.stderr).contains("cache miss"));
    let second = run(&["lattice", "S4", "--cache", d, "-v", "--format", "json"]);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);

    let file = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&file).unwrap();
    fs::write(&file, text.replacen("\"maximal\": true", "\"maximal\": false", 1)).unwrap();
    let third = run(&["lattice", "S4", "--cache", d, "-v", "--format", "json"]);
    assert_eq!(code(&third), 0);
    assert!(String::from_utf8_lossy(&third.stderr).contains("cache rejected"));
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn worked_example_and_maximal() {
    let v = json(&["example26"]);
    assert_eq!(v["schema"], "subcomm.example/1");
    assert_eq!(v["sd_direct"], "17/30");
    assert_eq!(v["identity_holds"], true);
    assert_eq!(v["integrality_flag"], true);
    let o = run(&["maximal", "A4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("single sum         16/25"));
}

#[test]
fn profile_and_dihedral_sweep() {
    let v = json(&["profile", "D8"]);
    assert_eq!(v["consistent"], true);
    assert!(v["collisions"].as_array().unwrap().iter().any(|c| c["value"] == "9/10"));
    let v = json(&["profile", "--dihedral-sweep", "24"]);
    let rows = v["rows"].as_array().unwrap();
    let nine_tenths: Vec<_> = rows.iter().filter(|r| r["both_nine_tenths"] == true).collect();
    assert_eq!(nine_tenths.len(), 1);
    assert_eq!(nine_tenths[0]["order"], 8);
}
