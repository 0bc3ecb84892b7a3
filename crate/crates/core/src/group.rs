//! Finite groups as Cayley tables, and the catalog of named families.
//!
//! Every constructor fixes a canonical element order with the identity at
//! index 0:
//!
//! * cyclic `Z_n`: powers `g^0 .. g^(n-1)`;
//! * dihedral of order `2n` (`D_{2n}`, named by order): `x^0..x^(n-1)` then
//!   `x^0 y .. x^(n-1) y`;
//! * symmetric / alternating: lexicographic one-line notation;
//! * direct products: lexicographic tuples, first factor most significant;
//! * permutation closures: lexicographic one-line notation;
//! * quotients: cosets ordered by their least element.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::perm::{all_perms, Perm};

/// Default cap on the order of any constructed group (the order of `S6`).
pub const DEFAULT_MAX_ORDER: usize = 720;

/// Up to this order associativity is checked on every triple; above it a
/// deterministic sample is checked.
pub const EXHAUSTIVE_ASSOC_BOUND: usize = 64;

pub type Elem = usize;

#[derive(Clone)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    label: String,
    names: Vec<String>,
    digest: OnceLock<[u8; 32]>,
}

impl GroupTable {
    /// Builds a group from a row-major table. The identity must be element 0.
    pub fn from_table(label: impl Into<String>, order: usize, mul: Vec<u32>, names: Vec<String>) -> Result<GroupTable> {
        let bad = |m: String| Error::InvalidTable(m);
        if order == 0 {
            return Err(bad("empty group".into()));
        }
        if mul.len() != order * order {
            return Err(bad(format!("table has {} entries, expected {}", mul.len(), order * order)));
        }
        if names.len() != order {
            return Err(bad("one name per element required".into()));
        }
        if let Some(&e) = mul.iter().find(|&&e| e as usize >= order) {
            return Err(bad(format!("entry {e} out of range")));
        }
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(bad("element 0 is not a two-sided identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            let Some(y) = row.iter().position(|&v| v == 0) else {
                return Err(bad(format!("element {x} has no inverse")));
            };
            if mul[y * order + x] != 0 {
                return Err(bad(format!("inverse of {x} is not two-sided")));
            }
            inv[x] = y as u32;
        }
        let g = GroupTable { order, mul, inv, label: label.into(), names, digest: OnceLock::new() };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::InvalidTable(format!("not associative at ({a},{b},{c})")));
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_ASSOC_BOUND {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // xorshift; fixed seed keeps construction deterministic
            let mut s: u64 = 0x9E37_79B9_7F4A_7C15;
            let mut next = || {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                (s % n as u64) as usize
            };
            for _ in 0..20_000 {
                let (a, b, c) = (next(), next(), next());
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }

    /// `x^-1 h x`.
    #[inline]
    pub fn conj(&self, h: Elem, x: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), h), x)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    pub fn center_size(&self) -> usize {
        (0..self.order).filter(|&a| (0..self.order).all(|b| self.commute(a, b))).count()
    }

    /// The subgroup generated by `gens`, as a bitset. Breadth-first closure
    /// under right multiplication by the generators.
    pub fn closure(&self, gens: &[Elem]) -> BitSet {
        let mut set = BitSet::new(self.order);
        set.insert(0);
        let gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Whether `set` is closed under multiplication and contains the identity.
    pub fn is_subgroup(&self, set: &BitSet) -> bool {
        if set.capacity() != self.order || !set.contains(0) {
            return false;
        }
        let elems: Vec<Elem> = set.iter().collect();
        elems.iter().all(|&a| elems.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    /// A small generating set, chosen greedily by decreasing element order.
    pub fn generators(&self) -> Vec<Elem> {
        self.generators_of(&BitSet::full(self.order))
    }

    /// A small generating set of the subgroup `h`.
    pub fn generators_of(&self, h: &BitSet) -> Vec<Elem> {
        let mut elems: Vec<Elem> = h.iter().collect();
        elems.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let target = h.count();
        let mut gens = Vec::new();
        let mut cur = self.closure(&[]);
        for x in elems {
            if cur.count() == target {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.closure(&gens);
            }
        }
        gens
    }

    /// SHA-256 of the order and the table in canonical element order.
    pub fn digest(&self) -> &[u8; 32] {
        self.digest.get_or_init(|| {
            let mut h = Sha256::new();
            h.update((self.order as u64).to_le_bytes());
            for &v in &self.mul {
                h.update(v.to_le_bytes());
            }
            h.finalize().into()
        })
    }

    pub fn digest_hex(&self) -> String {
        hex::encode(self.digest())
    }

    /// Whether two tables are literally the same group (same canonical order).
    pub fn same_table(&self, other: &GroupTable) -> bool {
        std::ptr::eq(self, other) || (self.order == other.order && self.mul == other.mul)
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable").field("label", &self.label).field("order", &self.order).finish()
    }
}

fn from_fn(label: String, order: usize, names: Vec<String>, f: impl Fn(usize, usize) -> usize) -> Result<GroupTable> {
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            mul.push(f(a, b) as u32);
        }
    }
    GroupTable::from_table(label, order, mul, names)
}

pub fn make_cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group order must be at least 1".into()));
    }
    let names = (0..n).map(|i| match i {
        0 => "e".to_string(),
        1 => "g".to_string(),
        _ => format!("g^{i}"),
    });
    from_fn(format!("Z{n}"), n, names.collect(), |a, b| (a + b) % n)
}

/// Dihedral group of order `order2n` (so `D8` has eight elements), presented
/// as `<x, y | x^(order2n/2) = y^2 = 1, yxy = x^-1>`.
pub fn make_dihedral(order2n: usize) -> Result<GroupTable> {
    if order2n < 4 || !order2n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("dihedral order must be even and at least 4, got {order2n}")));
    }
    let n = order2n / 2;
    let names = (0..order2n).map(|k| {
        let (i, j) = (k % n, k / n);
        let x = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        match (x.is_empty(), j) {
            (true, 0) => "e".to_string(),
            (false, 0) => x,
            (_, _) => format!("{x}y"),
        }
    });
    // x^i y^j * x^k y^l = x^(i + (-1)^j k) y^(j + l)
    from_fn(format!("D{order2n}"), order2n, names.collect(), |a, b| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        let e = if j == 0 { (i + k) % n } else { (i + n - k) % n };
        ((j + l) % 2) * n + e
    })
}

fn perm_table(label: String, perms: Vec<Perm>) -> Result<GroupTable> {
    let index: HashMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let order = perms.len();
    let mut mul = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            mul.push(index[&a.then(b)] as u32);
        }
    }
    let names = perms.iter().map(|p| p.to_string()).collect();
    GroupTable::from_table(label, order, mul, names)
}

pub const MAX_PERM_DEGREE: usize = 6;

pub fn make_symmetric(n: usize) -> Result<GroupTable> {
    if !(1..=MAX_PERM_DEGREE).contains(&n) {
        return Err(Error::InvalidParameter(format!("symmetric degree must be in 1..=6, got {n}")));
    }
    perm_table(format!("S{n}"), all_perms(n))
}

pub fn make_alternating(n: usize) -> Result<GroupTable> {
    if !(2..=MAX_PERM_DEGREE).contains(&n) {
        return Err(Error::InvalidParameter(format!("alternating degree must be in 2..=6, got {n}")));
    }
    let perms = all_perms(n).into_iter().filter(Perm::is_even).collect();
    perm_table(format!("A{n}"), perms)
}

/// Closure of the given permutations of `{1..degree}`.
pub fn from_generators(degree: usize, generators: &[Perm], max_order: usize) -> Result<GroupTable> {
    if degree == 0 || degree > u8::MAX as usize {
        return Err(Error::InvalidPermutation(format!("degree {degree} out of range")));
    }
    if let Some(p) = generators.iter().find(|p| p.degree() != degree) {
        return Err(Error::InvalidPermutation(format!("{p} is not a permutation of degree {degree}")));
    }
    let id = Perm::identity(degree);
    let mut seen: HashMap<Perm, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = p.then(g);
            if !seen.contains_key(&q) {
                if seen.len() >= max_order {
                    return Err(Error::OrderCap { order: seen.len() + 1, cap: max_order });
                }
                seen.insert(q.clone(), ());
                queue.push_back(q);
            }
        }
    }
    let mut perms: Vec<Perm> = seen.into_keys().collect();
    perms.sort();
    let label = format!("perm({degree}):{}", generators.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","));
    perm_table(label, perms)
}

/// Componentwise product, lexicographic tuples with the first factor most
/// significant.
pub fn direct_product(factors: &[&GroupTable], max_order: usize) -> Result<GroupTable> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("direct product needs at least one factor".into()));
    }
    let mut order: usize = 1;
    for f in factors {
        order = order
            .checked_mul(f.order())
            .filter(|&o| o <= max_order)
            .ok_or(Error::OrderCap { order: order.saturating_mul(f.order()), cap: max_order })?;
    }
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; factors.len()];
        for (k, f) in factors.iter().enumerate().rev() {
            d[k] = x % f.order();
            x /= f.order();
        }
        d
    };
    let tuples: Vec<Vec<usize>> = (0..order).map(digits).collect();
    let names = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(factors).map(|(&i, f)| f.name(i)).collect();
            format!("[{}]", parts.join(";"))
        })
        .collect();
    let label = factors.iter().map(|f| f.label().to_string()).collect::<Vec<_>>().join("x");
    from_fn(label, order, names, |a, b| {
        let (ta, tb) = (&tuples[a], &tuples[b]);
        factors.iter().enumerate().fold(0, |acc, (k, f)| acc * f.order() + f.mul(ta[k], tb[k]))
    })
}

/// `g / n` together with the map sending each element to its coset index.
pub fn quotient_group(g: &GroupTable, n: &BitSet) -> Result<(GroupTable, Vec<usize>)> {
    if !g.is_subgroup(n) {
        return Err(Error::NotSubgroup);
    }
    let nelems: Vec<Elem> = n.iter().collect();
    for x in g.generators() {
        if nelems.iter().any(|&h| !n.contains(g.conj(h, x))) {
            return Err(Error::NotNormal);
        }
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &h in &nelems {
            coset_of[g.mul(x, h)] = idx;
        }
    }
    let names = reps.iter().map(|&r| format!("{}N", g.name(r))).collect();
    let label = format!("{}/N{}", g.label(), n.count());
    let q = from_fn(label, reps.len(), names, |a, b| coset_of[g.mul(reps[a], reps[b])])?;
    Ok((q, coset_of))
}

/// The subgroup `h` of `g` as a group in its own right; elements keep the
/// ambient order (so the identity stays first).
pub fn induced_group(g: &GroupTable, h: &BitSet) -> Result<GroupTable> {
    if !g.is_subgroup(h) {
        return Err(Error::NotSubgroup);
    }
    let elems: Vec<Elem> = h.iter().collect();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in elems.iter().enumerate() {
        pos[x] = i;
    }
    let names = elems.iter().map(|&x| g.name(x).to_string()).collect();
    from_fn(format!("{}<{}>", g.label(), elems.len()), elems.len(), names, |a, b| pos[g.mul(elems[a], elems[b])])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        assert!(make_cyclic(0).is_err());
        assert_eq!(make_cyclic(1).unwrap().order(), 1);
        let z2 = make_cyclic(2).unwrap();
        assert_eq!(z2.mul(1, 1), 0);
        let z6 = make_cyclic(6).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert!(z6.commute(a, b));
            }
        }
    }

    #[test]
    fn dihedral_relations() {
        assert!(make_dihedral(3).is_err());
        assert!(make_dihedral(2).is_err());
        assert!(make_dihedral(7).is_err());
        let d8 = make_dihedral(8).unwrap();
        let x = d8.element_by_name("x").unwrap();
        let y = d8.element_by_name("y").unwrap();
        assert_eq!(d8.element_order(x), 4);
        assert_eq!(d8.element_order(y), 2);
        assert_eq!(d8.mul(d8.mul(y, x), y), d8.inv(x));
        assert!(!d8.is_abelian());
        assert_eq!(d8.name(5), "xy");
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(make_symmetric(3).unwrap().order(), 6);
        assert_eq!(make_symmetric(4).unwrap().order(), 24);
        assert_eq!(make_alternating(4).unwrap().order(), 12);
        assert!(make_symmetric(7).is_err());
        assert!(make_symmetric(0).is_err());
        assert!(make_alternating(1).is_err());
    }

    #[test]
    fn generators_closure() {
        let p = |s: &str| Perm::parse_cycles(4, s).unwrap();
        let s4 = from_generators(4, &[p("(1 2)"), p("(1 2 3 4)")], DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(s4.order(), 24);
        let v4 = from_generators(4, &[p("(1 2)(3 4)"), p("(1 3)(2 4)")], DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian());
        assert!((1..4).all(|x| v4.element_order(x) == 2));
        let c3 = from_generators(3, &[Perm::parse_cycles(3, "(1 2 3)").unwrap()], DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(matches!(from_generators(4, &[p("(1 2)"), p("(1 2 3 4)")], 10), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn product_orders_and_cap() {
        let z2 = make_cyclic(2).unwrap();
        let z3 = make_cyclic(3).unwrap();
        let p = direct_product(&[&z2, &z3], DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        assert_eq!(p.label(), "Z2xZ3");
        assert!(direct_product(&[&z2, &z3], 5).is_err());
        assert!(direct_product(&[], 5).is_err());
    }

    #[test]
    fn quotient_edges() {
        let s3 = make_symmetric(3).unwrap();
        let trivial = BitSet::from_indices(6, [0]);
        let (q, map) = quotient_group(&s3, &trivial).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(map, (0..6).collect::<Vec<_>>());
        let (q, _) = quotient_group(&s3, &BitSet::full(6)).unwrap();
        assert_eq!(q.order(), 1);
        let t = s3.element_by_name("(1,2)").unwrap();
        assert_eq!(quotient_group(&s3, &s3.closure(&[t])).unwrap_err(), Error::NotNormal);
        assert_eq!(quotient_group(&s3, &BitSet::from_indices(6, [0, t, 3])).unwrap_err(), Error::NotSubgroup);
    }

    #[test]
    fn rejects_bad_tables() {
        let names = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        // identity not at 0
        assert!(GroupTable::from_table("x", 2, vec![1, 0, 0, 1], names(2)).is_err());
        // non-associative loop of order 5 (a Latin square with identity)
        let t = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(GroupTable::from_table("loop", 5, t, names(5)), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn closure_matches_generated_subgroup() {
        let s4 = make_symmetric(4).unwrap();
        let gens = s4.generators();
        assert_eq!(s4.closure(&gens).count(), 24);
        assert!(gens.len() <= 3);
        let a = s4.element_by_name("(1,2,3)").unwrap();
        let b = s4.element_by_name("(1,2)(3,4)").unwrap();
        let h = s4.closure(&[a, b]);
        assert_eq!(h.count(), 12);
        assert!(s4.is_subgroup(&h));
        assert_eq!(s4.closure(&[b, a, b]), h);
    }
}
