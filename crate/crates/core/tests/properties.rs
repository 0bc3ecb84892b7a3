//! Invariants over random permutation groups and random inputs.

use std::sync::Arc;

use proptest::prelude::*;

use subcomm::bitset::BitSet;
use subcomm::cache::{from_cache_json, to_cache_json};
use subcomm::commutativity::{lower_bounds, sd, sd_pair_idx, sd_rel_idx, sd_via_maximal};
use subcomm::expr::{Family, GroupExpr};
use subcomm::group::from_generators;
use subcomm::lattice::permutes;
use subcomm::oracle::oracle_enumerate;
use subcomm::perm::Perm;
use subcomm::zm::valid_params_up_to;
use subcomm::{Fraction, GroupTable, Lattice};

fn perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

/// Subgroups of S5 given by one to three random generators.
fn perm_group() -> impl Strategy<Value = GroupTable> {
    (2usize..=5).prop_flat_map(|d| {
        prop::collection::vec(perm(d), 1..=3).prop_map(move |gens| from_generators(d, &gens, 720).unwrap())
    })
}

fn atom() -> impl Strategy<Value = GroupExpr> {
    let zms = valid_params_up_to(60);
    prop_oneof![
        (1usize..40).prop_map(|n| GroupExpr::Named(Family::Cyclic, n)),
        (2usize..20).prop_map(|n| GroupExpr::Named(Family::Dihedral, 2 * n)),
        (1usize..=6).prop_map(|n| GroupExpr::Named(Family::Symmetric, n)),
        (2usize..=6).prop_map(|n| GroupExpr::Named(Family::Alternating, n)),
        prop::sample::select(zms).prop_map(GroupExpr::Zm),
        (3usize..=7).prop_flat_map(|d| {
            prop::collection::vec(perm(d).prop_filter("non-identity", |p| !p.is_identity()), 1..=3)
                .prop_map(move |generators| GroupExpr::Perm { degree: d, generators })
        }),
    ]
}

fn expr() -> impl Strategy<Value = GroupExpr> {
    prop_oneof![
        3 => atom(),
        1 => prop::collection::vec(atom(), 2..=3).prop_map(GroupExpr::Product),
    ]
}

fn lattice(g: GroupTable) -> Lattice {
    Lattice::enumerate(Arc::new(g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expr_display_round_trips(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(GroupExpr::parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn lattice_matches_oracle(g in perm_group()) {
        let g = Arc::new(g);
        let a = Lattice::enumerate(g.clone());
        let b = oracle_enumerate(g).unwrap();
        prop_assert_eq!(a.subgroups(), b.subgroups());
    }

    #[test]
    fn degree_is_a_probability_with_integral_count(g in perm_group()) {
        let l = lattice(g);
        let r = sd(&l);
        prop_assert!(r.value.is_positive() && r.value <= Fraction::one());
        prop_assert!(r.is_integral());
        prop_assert_eq!(r.value.clone(), sd_via_maximal(&l));
        if l.group().is_abelian() {
            prop_assert!(r.value.is_one());
        }
    }

    #[test]
    fn lattice_permutability_matches_element_products(g in perm_group(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let l = lattice(g);
        let (i, j) = (i.index(l.len()), j.index(l.len()));
        let direct = permutes(l.group(), l.subgroup(i), l.subgroup(j)).unwrap();
        prop_assert_eq!(l.permutes_idx(i, j), direct);
        prop_assert_eq!(l.permutes_idx(i, j), l.permutes_idx(j, i));
    }

    #[test]
    fn join_and_meet_bound_the_pair(g in perm_group(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let l = lattice(g);
        let (i, j) = (i.index(l.len()), j.index(l.len()));
        let (join, meet) = (l.join(i, j), l.meet(i, j));
        for x in [i, j] {
            prop_assert!(l.below(join).contains(x));
            prop_assert!(l.below(x).contains(meet));
        }
        prop_assert_eq!(l.join(i, meet), i);
        prop_assert_eq!(l.meet(i, join), i);
    }

    #[test]
    fn conjugates_share_relative_degree(g in perm_group()) {
        let l = lattice(g);
        for class in l.conjugacy_classes() {
            let v = sd_rel_idx(&l, class[0]).value;
            for &i in &class[1..] {
                prop_assert_eq!(&sd_rel_idx(&l, i).value, &v);
            }
        }
    }

    #[test]
    fn pair_degree_is_symmetric(g in perm_group(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let l = lattice(g);
        let (i, j) = (i.index(l.len()), j.index(l.len()));
        prop_assert_eq!(sd_pair_idx(&l, i, j).value, sd_pair_idx(&l, j, i).value);
        prop_assert_eq!(sd_pair_idx(&l, l.top_index(), l.top_index()).value, sd(&l).value);
    }

    #[test]
    fn lower_bounds_hold(g in perm_group(), i in any::<prop::sample::Index>()) {
        let l = lattice(g);
        let h = l.subgroup(i.index(l.len())).clone();
        prop_assert!(lower_bounds(&l, &h).unwrap().all_hold());
    }

    #[test]
    fn cache_json_round_trips(g in perm_group()) {
        let l = lattice(g);
        let back = from_cache_json(l.group_arc().clone(), &to_cache_json(&l)).unwrap();
        prop_assert_eq!(back.subgroups(), l.subgroups());
    }

    #[test]
    fn bitset_hex_round_trips(len in 1usize..300, bits in prop::collection::vec(any::<prop::sample::Index>(), 0..40)) {
        let b = BitSet::from_indices(len, bits.iter().map(|i| i.index(len)));
        prop_assert_eq!(BitSet::from_hex(len, &b.to_hex()), Some(b));
    }

    #[test]
    fn fraction_text_round_trips(p in -10_000i64..10_000, q in 1i64..10_000) {
        let f = Fraction::new(p, q);
        prop_assert_eq!(f.to_string().parse::<Fraction>().unwrap(), f);
    }
}
