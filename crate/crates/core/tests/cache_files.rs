use std::fs;
use std::sync::Arc;

use subcomm::cache::{CacheStatus, LatticeCache};
use subcomm::expr::GroupExpr;
use subcomm::Lattice;

fn group(text: &str) -> Arc<subcomm::GroupTable> {
    Arc::new(GroupExpr::parse(text).unwrap().build(720).unwrap())
}

#[test]
fn miss_then_hit() {
    let dir = tempfile::tempdir().unwrap();
    let c = LatticeCache::new(dir.path());
    let g = group("S4");
    let (a, s) = c.get_or_enumerate(g.clone());
    assert_eq!(s, CacheStatus::Miss);
    assert!(c.path_for(&g).exists());
    let (b, s) = c.get_or_enumerate(g);
    assert_eq!(s, CacheStatus::Hit);
    assert_eq!(a.subgroups(), b.subgroups());
}

fn rejected_after(edit: impl Fn(String) -> String) -> String {
    let dir = tempfile::tempdir().unwrap();
    let c = LatticeCache::new(dir.path());
    let g = group("D8");
    c.store(&Lattice::enumerate(g.clone())).unwrap();
    let path = c.path_for(&g);
    fs::write(&path, edit(fs::read_to_string(&path).unwrap())).unwrap();
    let (lat, s) = c.get_or_enumerate(g.clone());
    assert_eq!(lat.len(), 10);
    // the rejected file was replaced by a good one
    assert_eq!(c.get_or_enumerate(g).1, CacheStatus::Hit);
    match s {
        CacheStatus::Rejected(why) => why,
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn tampered_files_are_rejected() {
    assert!(rejected_after(|t| t.replace("\"version\": 1", "\"version\": 2")).contains("unsupported"));
    assert!(rejected_after(|t| t.replacen("\"normal\": true", "\"normal\": false", 2)).contains("disagree"));
    assert!(rejected_after(|_| "{".into()).contains("unreadable"));
    // drop one subgroup entry: the lattice is no longer complete
    let why = rejected_after(|t| {
        let mut v: serde_json::Value = serde_json::from_str(&t).unwrap();
        v["subgroups"].as_array_mut().unwrap().remove(1);
        v.to_string()
    });
    assert!(why.contains("missing") || why.contains("disagree"), "{why}");
    // a non-subgroup bitset
    let why = rejected_after(|t| {
        let mut v: serde_json::Value = serde_json::from_str(&t).unwrap();
        v["subgroups"][1]["bits"] = "6".into();
        v.to_string()
    });
    assert!(why.contains("not closed") || why.contains("order"), "{why}");
}

#[test]
fn different_groups_use_different_files() {
    let c = LatticeCache::new("unused");
    assert_ne!(c.path_for(&group("Z6")), c.path_for(&group("S3")));
    assert_eq!(c.path_for(&group("Z2xZ3")), c.path_for(&group("Z2xZ3")));
}
