//! Values computed by hand or taken from standard tables.

use std::sync::Arc;

use subcomm::commutativity::{d_group, sd};
use subcomm::expr::GroupExpr;
use subcomm::oracle::oracle_enumerate;
use subcomm::{Fraction, Lattice};

fn lat(text: &str) -> Lattice {
    Lattice::enumerate(Arc::new(GroupExpr::parse(text).unwrap().build(720).unwrap()))
}

#[test]
fn lattice_sizes() {
    for (g, n) in [
        ("Z1", 1),
        ("Z12", 6),
        ("Z2xZ2", 5),
        ("Z2xZ2xZ2", 16),
        ("S3", 6),
        ("D8", 10),
        ("A4", 10),
        ("S4", 30),
        ("A5", 59),
        ("S5", 156),
        ("S3xZ5", 12),
    ] {
        assert_eq!(lat(g).len(), n, "{g}");
    }
}

#[test]
fn cyclic_lattice_is_the_divisor_lattice() {
    for n in 1..=40usize {
        let divisors = (1..=n).filter(|d| n.is_multiple_of(*d)).count();
        assert_eq!(lat(&format!("Z{n}")).len(), divisors, "Z{n}");
    }
}

#[test]
fn dihedral_lattice_size() {
    // |L(D_2n)| = tau(n) + sigma(n)
    for n in 2..=20usize {
        let divs: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        let want = divs.len() + divs.iter().sum::<usize>();
        assert_eq!(lat(&format!("D{}", 2 * n)).len(), want, "D{}", 2 * n);
    }
}

#[test]
fn subgroup_commutativity_degrees() {
    for (g, p, q) in [("S3", 5, 6), ("D8", 23, 25), ("A4", 16, 25), ("S4", 17, 30), ("Z30", 1, 1), ("Z2xZ2xZ2", 1, 1)] {
        assert_eq!(sd(&lat(g)).value, Fraction::new(p, q), "{g}");
    }
}

#[test]
fn element_commutativity_degrees() {
    // d(G) = k(G)/|G|
    for (g, classes, order) in [("S3", 3, 6), ("D8", 5, 8), ("A4", 4, 12), ("S4", 5, 24), ("A5", 5, 60), ("S5", 7, 120)]
    {
        let l = lat(g);
        assert_eq!(d_group(l.group()), Fraction::new(classes, order), "{g}");
    }
}

#[test]
fn products_of_coprime_cyclics_are_cyclic_lattices() {
    let l = lat("Z4xZ9");
    assert_eq!(l.len(), 9);
    assert!(sd(&l).value.is_one());
}

#[test]
fn oracle_agrees_on_named_groups() {
    for g in ["S4", "D24", "A4xZ5", "ZM(7,3,2)", "perm(6):(1,2,3,4,5,6),(1,6)(2,5)(3,4)"] {
        let l = lat(g);
        let o = oracle_enumerate(l.group_arc().clone()).unwrap();
        assert_eq!(l.subgroups(), o.subgroups(), "{g}");
    }
}
