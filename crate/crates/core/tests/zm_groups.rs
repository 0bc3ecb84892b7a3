use std::sync::Arc;

use subcomm::commutativity::sd;
use subcomm::zm::{build_zm, valid_params_up_to, validate_zm, verify_bijection, zm_sd_table, ZmViolation};
use subcomm::Lattice;

#[test]
fn bijection_for_every_valid_triple_up_to_100() {
    let params = valid_params_up_to(100);
    assert!(params.len() > 100);
    for p in params {
        let r = verify_bijection(&p).unwrap();
        assert!(r.ok, "{p}: {r:?}");
        assert_eq!(r.triples, r.lattice_size, "{p}");
    }
}

#[test]
fn invalid_parameters_name_the_violation() {
    let e = validate_zm(4, 2, 3).unwrap_err().to_string();
    assert!(e.contains("gcd(m, n)"), "{e}");
    assert!(validate_zm(7, 3, 3).is_err());
    assert!(validate_zm(0, 3, 1).is_err());
    assert!(subcomm::zm::zm_violations(7, 3, 3).contains(&ZmViolation::OrderCondition));
}

#[test]
fn zm_7_3_2_is_the_frobenius_group_of_order_21() {
    let p = validate_zm(7, 3, 2).unwrap();
    let l = Lattice::enumerate(Arc::new(build_zm(&p, 720).unwrap()));
    assert_eq!(l.len(), 10);
    let rows = zm_sd_table(&p).unwrap();
    assert_eq!(rows.len(), 10);
    // the Sylow 3-subgroups are the only non-normal ones
    assert_eq!(rows.iter().filter(|r| !r.normal).count(), 7);
    assert!(rows.iter().filter(|r| !r.normal).all(|r| r.order == 3));
    assert!(!sd(&l).value.is_one());
}
