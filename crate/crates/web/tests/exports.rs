use serde_json::Value;
use subcomm_web::{sd_rel_json, summary_json, zm_table_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn s3_summary() {
    let v = parse(summary_json("S3").unwrap());
    assert_eq!(v["subgroups"], 6);
    assert_eq!(v["sd"], "5/6");
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
}

#[test]
fn d8_reflections_share_a_value() {
    let v = parse(summary_json("D8").unwrap());
    let shared = v["shared"].as_array().unwrap();
    assert!(shared.iter().any(|s| s[0] == "9/10"));
}

#[test]
fn relative_degree_by_selector() {
    let v = parse(sd_rel_json("S4", "alternating").unwrap());
    assert_eq!(v["order"], 12);
    assert_eq!(v["sd"], "16/25");
}

#[test]
fn zm_rows() {
    let v = parse(zm_table_json("ZM(3,2,2)").unwrap());
    assert_eq!(v.as_array().unwrap().len(), 6);
    assert!(zm_table_json("S3").unwrap_err().contains("not a ZM"));
}

#[test]
fn errors_are_messages() {
    assert!(summary_json("Q(").unwrap_err().contains("column"));
    assert!(summary_json("S6").unwrap_err().contains("cap"));
}
