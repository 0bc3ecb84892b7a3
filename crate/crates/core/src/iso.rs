//! Isomorphism testing for small groups.
//!
//! Invariants (element-order histogram, centralizer profile, center size)
//! refute most non-isomorphic pairs outright. Otherwise the search assigns
//! images to a greedy generating set of the first group, one generator at a
//! time, and checks after each assignment that the partial map extends to an
//! injective homomorphism on the subgroup generated so far.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};

/// Orders up to this bound get a complete search.
pub const ISO_GUARANTEE_BOUND: usize = 64;

/// `(element order, centralizer size) -> count`; conjugation-invariant and
/// preserved by isomorphisms.
fn profile(g: &GroupTable) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for x in 0..g.order() {
        let cent = (0..g.order()).filter(|&y| g.commute(x, y)).count();
        *m.entry((g.element_order(x), cent)).or_insert(0) += 1;
    }
    m
}

/// Whether some invariant already separates the two groups.
pub fn invariants_differ(a: &GroupTable, b: &GroupTable) -> bool {
    a.order() != b.order() || a.center_size() != b.center_size() || profile(a) != profile(b)
}

pub fn are_isomorphic(a: &GroupTable, b: &GroupTable) -> Result<bool> {
    for g in [a, b] {
        if g.order() > ISO_GUARANTEE_BOUND {
            return Err(Error::IsoBound { order: g.order(), bound: ISO_GUARANTEE_BOUND });
        }
    }
    Ok(find_isomorphism(a, b).is_some())
}

/// An explicit isomorphism `a -> b` as an element map, if one exists.
pub fn find_isomorphism(a: &GroupTable, b: &GroupTable) -> Option<Vec<Elem>> {
    if invariants_differ(a, b) {
        return None;
    }
    let gens = a.generators();
    let order_of_b: Vec<usize> = (0..b.order()).map(|x| b.element_order(x)).collect();
    let cent = |g: &GroupTable, x: Elem| (0..g.order()).filter(|&y| g.commute(x, y)).count();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let (o, c) = (a.element_order(g), cent(a, g));
            (0..b.order()).filter(|&y| order_of_b[y] == o && cent(b, y) == c).collect()
        })
        .collect();
    if gens.is_empty() {
        return Some(vec![0]);
    }
    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &candidates, &mut images)
}

fn search(
    a: &GroupTable,
    b: &GroupTable,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    images: &mut Vec<Elem>,
) -> Option<Vec<Elem>> {
    let k = images.len();
    for &y in &candidates[k] {
        images.push(y);
        if let Some(map) = extend(a, b, &gens[..=k], images) {
            if k + 1 == gens.len() {
                // a generating set: the map is total, injective and a homomorphism
                debug_assert_eq!(map.len(), a.order());
                let mut dense = vec![0; a.order()];
                for (x, fx) in map {
                    dense[x] = fx;
                }
                return Some(dense);
            } else if let Some(done) = search(a, b, gens, candidates, images) {
                return Some(done);
            }
        }
        images.pop();
    }
    None
}

/// Extends a generator assignment along right multiplication to the
/// generated subgroup. `None` if the extension is inconsistent, not injective
/// or not a homomorphism.
fn extend(a: &GroupTable, b: &GroupTable, gens: &[Elem], images: &[Elem]) -> Option<HashMap<Elem, Elem>> {
    let mut map: HashMap<Elem, Elem> = HashMap::from([(0, 0)]);
    let mut used = vec![false; b.order()];
    used[0] = true;
    let mut queue = vec![0];
    while let Some(x) = queue.pop() {
        let fx = map[&x];
        for (&g, &fg) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let fy = b.mul(fx, fg);
            match map.get(&y) {
                Some(&prev) if prev != fy => return None,
                Some(_) => {}
                None => {
                    if std::mem::replace(&mut used[fy], true) {
                        return None;
                    }
                    map.insert(y, fy);
                    queue.push(y);
                }
            }
        }
    }
    for (&x, &fx) in &map {
        for (&y, &fy) in &map {
            if map.get(&a.mul(x, y)) != Some(&b.mul(fx, fy)) {
                return None;
            }
        }
    }
    Some(map)
}

/// Whether the element map `m` respects multiplication.
pub fn is_homomorphism(a: &GroupTable, b: &GroupTable, m: &[Elem]) -> bool {
    (0..a.order()).all(|x| (0..a.order()).all(|y| m[a.mul(x, y)] == b.mul(m[x], m[y])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn z4_vs_klein() {
        let z4 = make_cyclic(4).unwrap();
        let v4 = make_dihedral(4).unwrap();
        assert!(!are_isomorphic(&z4, &v4).unwrap());
        let z2 = make_cyclic(2).unwrap();
        assert!(are_isomorphic(&v4, &direct_product(&[&z2, &z2], 720).unwrap()).unwrap());
    }

    #[test]
    fn d6_is_s3_and_z6_is_z2xz3() {
        let d6 = make_dihedral(6).unwrap();
        let s3 = make_symmetric(3).unwrap();
        let m = find_isomorphism(&d6, &s3).unwrap();
        assert!(is_homomorphism(&d6, &s3, &m));
        let z6 = make_cyclic(6).unwrap();
        let p = direct_product(&[&make_cyclic(2).unwrap(), &make_cyclic(3).unwrap()], 720).unwrap();
        assert!(are_isomorphic(&z6, &p).unwrap());
        assert!(!are_isomorphic(&z6, &s3).unwrap());
    }

    #[test]
    fn order_eight_distinctions() {
        let d8 = make_dihedral(8).unwrap();
        let z8 = make_cyclic(8).unwrap();
        let z2 = make_cyclic(2).unwrap();
        let e8 = direct_product(&[&z2, &z2, &z2], 720).unwrap();
        assert!(!are_isomorphic(&d8, &z8).unwrap());
        assert!(!are_isomorphic(&d8, &e8).unwrap());
        assert!(are_isomorphic(&d8, &d8).unwrap());
    }

    #[test]
    fn bound_enforced() {
        let s5 = make_symmetric(5).unwrap();
        assert!(matches!(are_isomorphic(&s5, &s5), Err(Error::IsoBound { .. })));
    }
}
