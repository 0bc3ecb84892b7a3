//! ZM-groups `ZM(m, n, r) = <a, b | a^m = b^n = 1, b^-1 a b = a^r>` and
//! their subgroups, indexed by triples `(m1, n1, s)`.
//!
//! Elements are stored in normal form `b^i a^j` at index `i·m + j`.

use std::sync::Arc;

use num_integer::gcd;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::commutativity::sd_rel_idx;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::group::{GroupTable, DEFAULT_MAX_ORDER};
use crate::lattice::{Lattice, SubgroupSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ZmParams {
    m: u64,
    n: u64,
    r: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZmViolation {
    NonPositive,
    MnNotCoprime,
    MRMinusOneNotCoprime,
    OrderCondition,
}

impl std::fmt::Display for ZmViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ZmViolation::NonPositive => "m and n must be positive",
            ZmViolation::MnNotCoprime => "gcd(m, n) != 1",
            ZmViolation::MRMinusOneNotCoprime => "gcd(m, r-1) != 1",
            ZmViolation::OrderCondition => "r^n != 1 (mod m)",
        })
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut acc, mut b) = (1u128, base as u128 % m as u128);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Every condition `(m, n, r)` violates; empty when valid.
pub fn zm_violations(m: i64, n: i64, r: i64) -> Vec<ZmViolation> {
    if m <= 0 || n <= 0 {
        return vec![ZmViolation::NonPositive];
    }
    let (mu, nu) = (m as u64, n as u64);
    let r = r.rem_euclid(m) as u64;
    let mut v = Vec::new();
    if gcd(mu, nu) != 1 {
        v.push(ZmViolation::MnNotCoprime);
    }
    let rm1 = (r + mu - 1) % mu;
    if gcd(mu, rm1) != 1 {
        v.push(ZmViolation::MRMinusOneNotCoprime);
    }
    if pow_mod(r, nu, mu) != 1 % mu {
        v.push(ZmViolation::OrderCondition);
    }
    v
}

/// Validates and canonicalizes: `r` is reduced into `[1, max(m, 2))`.
pub fn validate_zm(m: i64, n: i64, r: i64) -> Result<ZmParams> {
    let v = zm_violations(m, n, r);
    if !v.is_empty() {
        let msg: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        return Err(Error::Zm(format!("ZM({m},{n},{r}): {}", msg.join("; "))));
    }
    let r = if m == 1 { 1 } else { r.rem_euclid(m) as u64 };
    Ok(ZmParams { m: m as u64, n: n as u64, r })
}

impl ZmParams {
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn order(&self) -> u64 {
        self.m * self.n
    }

    fn elem(&self, i: u64, j: u64) -> usize {
        ((i % self.n) * self.m + j % self.m) as usize
    }
}

impl std::fmt::Display for ZmParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ZM({},{},{})", self.m, self.n, self.r)
    }
}

/// `(b^i1 a^j1)(b^i2 a^j2) = b^(i1+i2) a^(j1 r^i2 + j2)`, from `a b = b a^r`.
pub fn build_zm(p: &ZmParams, max_order: usize) -> Result<GroupTable> {
    let order = p.order() as usize;
    if order > max_order {
        return Err(Error::OrderCap { order, cap: max_order });
    }
    let (m, n) = (p.m, p.n);
    let rpow: Vec<u64> = (0..n).map(|i| pow_mod(p.r, i, m)).collect();
    let names = (0..order)
        .map(|k| {
            let (i, j) = (k as u64 / m, k as u64 % m);
            let mut s = String::new();
            match i {
                0 => {}
                1 => s.push('b'),
                _ => s.push_str(&format!("b^{i}")),
            }
            match j {
                0 => {}
                1 => s.push('a'),
                _ => s.push_str(&format!("a^{j}")),
            }
            if s.is_empty() {
                s.push('e');
            }
            s
        })
        .collect();
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order as u64 {
        let (i1, j1) = (x / m, x % m);
        for y in 0..order as u64 {
            let (i2, j2) = (y / m, y % m);
            let j = (j1 * rpow[i2 as usize] + j2) % m;
            mul.push(((i1 + i2) % n * m + j) as u32);
        }
    }
    GroupTable::from_table(p.to_string(), order, mul, names)
}

fn divisors(x: u64) -> Vec<u64> {
    (1..=x).filter(|d| x.is_multiple_of(*d)).collect()
}

/// `Σ_{i=0}^{n/n1 - 1} r^(i·n1) mod m`, the value of `(r^n - 1)/(r^n1 - 1)`
/// modulo `m` without the division (and without the `r ≡ 1` singularity).
pub fn geometric_quotient(p: &ZmParams, n1: u64) -> Result<u64> {
    if n1 == 0 || !p.n.is_multiple_of(n1) {
        return Err(Error::InvalidParameter(format!("{n1} does not divide n = {}", p.n)));
    }
    let step = pow_mod(p.r, n1, p.m);
    let mut term = 1 % p.m;
    let mut sum = 0;
    for _ in 0..p.n / n1 {
        sum = (sum + term) % p.m;
        term = term * step % p.m;
    }
    Ok(sum)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ZmTriple {
    pub m1: u64,
    pub n1: u64,
    pub s: u64,
}

impl std::fmt::Display for ZmTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.m1, self.n1, self.s)
    }
}

pub fn is_valid_triple(p: &ZmParams, t: &ZmTriple) -> bool {
    t.m1 > 0
        && p.m.is_multiple_of(t.m1)
        && t.n1 > 0
        && p.n.is_multiple_of(t.n1)
        && t.s < t.m1
        && geometric_quotient(p, t.n1).is_ok_and(|q| (t.s * q).is_multiple_of(t.m1))
}

/// All triples `(m1, n1, s)` with `m1 | m`, `n1 | n`, `0 ≤ s < m1` and
/// `m1 | s·q(n1)`, in lexicographic order.
pub fn enumerate_triples(p: &ZmParams) -> Vec<ZmTriple> {
    let mut out = Vec::new();
    for m1 in divisors(p.m) {
        for n1 in divisors(p.n) {
            let q = geometric_quotient(p, n1).expect("divisor");
            for s in 0..m1 {
                if (s * q).is_multiple_of(m1) {
                    out.push(ZmTriple { m1, n1, s });
                }
            }
        }
    }
    out
}

/// `∪_{k=1}^{n/n1} (b^n1 a^s)^k <a^m1>` as an element set. The result is
/// checked to be a subgroup of order `(n/n1)(m/m1)`.
pub fn triple_to_subgroup(g: &GroupTable, p: &ZmParams, t: &ZmTriple) -> Result<SubgroupSet> {
    if !is_valid_triple(p, t) {
        return Err(Error::InvalidParameter(format!("{t} is not an admissible triple for {p}")));
    }
    if g.order() as u64 != p.order() {
        return Err(Error::AmbientMismatch);
    }
    let a_part = g.closure(&[p.elem(0, t.m1)]);
    let step = p.elem(t.n1, t.s);
    let mut set = BitSet::new(g.order());
    let mut power = 0; // identity
    for _ in 0..p.n / t.n1 {
        power = g.mul(power, step);
        for x in a_part.iter() {
            set.insert(g.mul(power, x));
        }
    }
    let h = SubgroupSet::new(g, set)
        .map_err(|_| Error::InvalidParameter(format!("{t} does not give a subgroup of {p}")))?;
    let expected = (p.n / t.n1) * (p.m / t.m1);
    if h.size() as u64 != expected {
        return Err(Error::InvalidParameter(format!("{t} gives {} elements, expected {expected}", h.size())));
    }
    Ok(h)
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub params: ZmParams,
    pub triples: usize,
    pub lattice_size: usize,
    /// Pairs of triples mapped to the same subgroup.
    pub collisions: Vec<(ZmTriple, ZmTriple)>,
    /// Triples that failed to produce a subgroup of the expected order.
    pub invalid: Vec<ZmTriple>,
    /// Lattice indices of subgroups no triple reaches.
    pub missing: Vec<usize>,
    pub ok: bool,
}

/// Compares the triple parametrization against the enumerated lattice.
pub fn verify_bijection_with(lat: &Lattice, p: &ZmParams) -> BijectionReport {
    let g = lat.group();
    let triples = enumerate_triples(p);
    let mut hit: Vec<Option<ZmTriple>> = vec![None; lat.len()];
    let mut collisions = Vec::new();
    let mut invalid = Vec::new();
    for t in &triples {
        match triple_to_subgroup(g, p, t).ok().and_then(|h| lat.index_of(&h).ok()) {
            Some(i) => match hit[i] {
                Some(prev) => collisions.push((prev, *t)),
                None => hit[i] = Some(*t),
            },
            None => invalid.push(*t),
        }
    }
    let missing: Vec<usize> = (0..lat.len()).filter(|&i| hit[i].is_none()).collect();
    BijectionReport {
        params: *p,
        triples: triples.len(),
        lattice_size: lat.len(),
        ok: collisions.is_empty() && invalid.is_empty() && missing.is_empty(),
        collisions,
        invalid,
        missing,
    }
}

pub fn verify_bijection(p: &ZmParams) -> Result<BijectionReport> {
    let g = Arc::new(build_zm(p, DEFAULT_MAX_ORDER)?);
    Ok(verify_bijection_with(&Lattice::enumerate(g), p))
}

/// One subgroup of a ZM-group with its relative degree. Serialized column
/// order is fixed: `m,n,r,m1,n1,s,gcd_s_m1,order,normal,sd`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ZmRow {
    pub m: u64,
    pub n: u64,
    pub r: u64,
    pub m1: u64,
    pub n1: u64,
    pub s: u64,
    pub gcd_s_m1: u64,
    pub order: u64,
    pub normal: bool,
    pub sd: Fraction,
}

pub fn zm_sd_table_with(lat: &Lattice, p: &ZmParams) -> Result<Vec<ZmRow>> {
    enumerate_triples(p)
        .into_iter()
        .map(|t| {
            let h = triple_to_subgroup(lat.group(), p, &t)?;
            let i = lat.index_of(&h)?;
            Ok(ZmRow {
                m: p.m,
                n: p.n,
                r: p.r,
                m1: t.m1,
                n1: t.n1,
                s: t.s,
                gcd_s_m1: gcd(t.s, t.m1),
                order: h.size() as u64,
                normal: lat.is_normal(i),
                sd: sd_rel_idx(lat, i).value,
            })
        })
        .collect()
}

pub fn zm_sd_table(p: &ZmParams) -> Result<Vec<ZmRow>> {
    let g = Arc::new(build_zm(p, DEFAULT_MAX_ORDER)?);
    zm_sd_table_with(&Lattice::enumerate(g), p)
}

/// Every valid `(m, n, r)` with `m·n ≤ max_order` and `r` in canonical range,
/// ordered by `(m, n, r)`.
pub fn valid_params_up_to(max_order: u64) -> Vec<ZmParams> {
    let mut out = Vec::new();
    for m in 1..=max_order {
        for n in 1..=max_order / m {
            let rs: Vec<u64> = if m == 1 { vec![1] } else { (1..m).collect() };
            for r in rs {
                if let Ok(p) = validate_zm(m as i64, n as i64, r as i64) {
                    out.push(p);
                }
            }
        }
    }
    out
}

pub const SWEEP_CSV_HEADER: &str = "m,n,r,m1,n1,s,gcd_s_m1,order,normal,sd";

impl ZmRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.m, self.n, self.r, self.m1, self.n1, self.s, self.gcd_s_m1, self.order, self.normal, self.sd
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_symmetric;
    use crate::iso::are_isomorphic;

    #[test]
    fn validation() {
        assert!(validate_zm(3, 2, 2).is_ok());
        assert_eq!(zm_violations(4, 2, 3), vec![ZmViolation::MnNotCoprime, ZmViolation::MRMinusOneNotCoprime]);
        assert!(validate_zm(4, 2, 3).unwrap_err().to_string().contains("gcd(m, r-1)"));
        let p = validate_zm(1, 6, 1).unwrap();
        assert_eq!(p.r(), 1);
        assert_eq!(validate_zm(5, 4, 7).unwrap().r(), 2);
        assert_eq!(zm_violations(5, 3, 2), vec![ZmViolation::OrderCondition]);
        assert_eq!(zm_violations(0, 3, 2), vec![ZmViolation::NonPositive]);
    }

    #[test]
    fn groups() {
        let p = validate_zm(3, 2, 2).unwrap();
        let g = build_zm(&p, 720).unwrap();
        assert!(are_isomorphic(&g, &make_symmetric(3).unwrap()).unwrap());
        let c = build_zm(&validate_zm(1, 7, 1).unwrap(), 720).unwrap();
        assert!(are_isomorphic(&c, &crate::group::make_cyclic(7).unwrap()).unwrap());
        let g20 = build_zm(&validate_zm(5, 4, 2).unwrap(), 720).unwrap();
        assert_eq!(g20.order(), 20);
        assert!(!g20.is_abelian());
        let a = g20.element_by_name("a").unwrap();
        let b = g20.element_by_name("b").unwrap();
        assert_eq!(g20.conj(a, b), g20.element_by_name("a^2").unwrap());
        assert!(build_zm(&validate_zm(7, 3, 2).unwrap(), 20).is_err());
    }

    #[test]
    fn quotient_sums() {
        let p = validate_zm(3, 2, 2).unwrap();
        assert_eq!(geometric_quotient(&p, 2).unwrap(), 1);
        assert_eq!(geometric_quotient(&p, 1).unwrap(), 0);
        assert!(geometric_quotient(&p, 3).is_err());
        let c = validate_zm(1, 6, 1).unwrap();
        assert_eq!(geometric_quotient(&c, 2).unwrap(), 0);
    }

    #[test]
    fn triples_of_s3() {
        let p = validate_zm(3, 2, 2).unwrap();
        let t: Vec<(u64, u64, u64)> = enumerate_triples(&p).iter().map(|t| (t.m1, t.n1, t.s)).collect();
        assert_eq!(t, vec![(1, 1, 0), (1, 2, 0), (3, 1, 0), (3, 1, 1), (3, 1, 2), (3, 2, 0)]);
        let c = validate_zm(1, 12, 1).unwrap();
        assert_eq!(enumerate_triples(&c).len(), 6);
    }

    #[test]
    fn triple_subgroups() {
        let p = validate_zm(3, 2, 2).unwrap();
        let g = build_zm(&p, 720).unwrap();
        let whole = triple_to_subgroup(&g, &p, &ZmTriple { m1: 1, n1: 1, s: 0 }).unwrap();
        assert_eq!(whole.size(), 6);
        let triv = triple_to_subgroup(&g, &p, &ZmTriple { m1: 3, n1: 2, s: 0 }).unwrap();
        assert_eq!(triv.size(), 1);
        let h = triple_to_subgroup(&g, &p, &ZmTriple { m1: 3, n1: 1, s: 1 }).unwrap();
        let names: Vec<&str> = h.elements().map(|x| g.name(x)).collect();
        assert_eq!(names, vec!["e", "ba"]);
        assert!(triple_to_subgroup(&g, &p, &ZmTriple { m1: 3, n1: 2, s: 1 }).is_err());
    }

    #[test]
    fn bijections() {
        for (m, n, r) in [(3, 2, 2), (5, 4, 2), (7, 3, 2)] {
            let rep = verify_bijection(&validate_zm(m, n, r).unwrap()).unwrap();
            assert!(rep.ok, "{rep:?}");
            assert_eq!(rep.triples, rep.lattice_size);
        }
    }

    #[test]
    fn s3_table() {
        let rows = zm_sd_table(&validate_zm(3, 2, 2).unwrap()).unwrap();
        for r in &rows {
            let want = match r.order {
                2 => Fraction::new(5, 6),
                6 => Fraction::new(5, 6),
                _ => Fraction::one(),
            };
            assert_eq!(r.sd, want, "{r:?}");
        }
        assert_eq!(rows[0].csv_line(), "3,2,2,1,1,0,1,6,true,5/6");
    }
}
