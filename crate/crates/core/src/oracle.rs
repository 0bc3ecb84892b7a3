//! Brute-force ground truth for subgroup enumeration.
//!
//! Shares nothing with [`Lattice::enumerate`] beyond the group table: closure
//! is computed by squaring a set until it stops growing, and subgroups are
//! collected level by level as closures of subsets of size at most
//! `⌊log2 |G|⌋` (every subgroup of a group of order `n` has a generating set
//! of that size).

use std::collections::HashSet;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::lattice::Lattice;

pub const ORACLE_BOUND: usize = 128;

/// Smallest set containing `seed` closed under multiplication.
pub fn naive_closure(g: &GroupTable, seed: &[Elem]) -> BitSet {
    let mut set = BitSet::from_indices(g.order(), seed.iter().copied().chain([0]));
    loop {
        let elems: Vec<Elem> = set.iter().collect();
        let mut grew = false;
        for &a in &elems {
            for &b in &elems {
                grew |= set.insert(g.mul(a, b));
            }
        }
        if !grew {
            return set;
        }
    }
}

/// All subgroups of `g` as bitsets, in no particular order.
pub fn oracle_subgroup_sets(g: &GroupTable) -> Result<HashSet<BitSet>> {
    if g.order() > ORACLE_BOUND {
        return Err(Error::OracleBound { order: g.order(), bound: ORACLE_BOUND });
    }
    let depth = usize::BITS as usize - 1 - g.order().leading_zeros() as usize; // ⌊log2 n⌋
    let mut all: HashSet<BitSet> = HashSet::new();
    let trivial = naive_closure(g, &[]);
    all.insert(trivial.clone());
    let mut level = vec![trivial];
    for _ in 0..depth {
        let mut next = Vec::new();
        for h in &level {
            for x in 0..g.order() {
                if h.contains(x) {
                    continue;
                }
                let mut seed: Vec<Elem> = h.iter().collect();
                seed.push(x);
                let s = naive_closure(g, &seed);
                if all.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok(all)
}

pub fn oracle_enumerate(g: Arc<GroupTable>) -> Result<Lattice> {
    let sets = oracle_subgroup_sets(&g)?;
    Lattice::from_subgroups(g, sets.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn oracle_counts() {
        let n = |g: GroupTable| oracle_subgroup_sets(&g).unwrap().len();
        assert_eq!(n(make_cyclic(6).unwrap()), 4);
        assert_eq!(n(make_dihedral(8).unwrap()), 10);
        assert_eq!(n(make_alternating(4).unwrap()), 10);
        assert_eq!(n(make_symmetric(3).unwrap()), 6);
        assert_eq!(n(make_cyclic(1).unwrap()), 1);
    }

    #[test]
    fn oracle_bound() {
        let s5 = make_symmetric(5).unwrap();
        assert!(oracle_subgroup_sets(&s5).is_ok());
        let big = make_cyclic(129).unwrap();
        assert!(matches!(oracle_subgroup_sets(&big), Err(Error::OracleBound { .. })));
    }
}
