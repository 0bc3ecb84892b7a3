//! Subgroup commutativity degrees, their relative and n-ary variants, the
//! element-level commutativity degrees, and the identities and inequalities
//! relating them.
//!
//! Every value is an exact [`Fraction`]. Pair counts come from the lattice's
//! permutability test (`|H ∨ K| |H ∧ K| = |H| |K|`); the tests check them
//! against element-level product sets.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::group::{direct_product, quotient_group, Elem, GroupTable, DEFAULT_MAX_ORDER};
use crate::lattice::{Lattice, SubgroupSet};

/// Counting data behind one degree value.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SdReport {
    pub group: String,
    pub value: Fraction,
    pub pair_count: u64,
    /// `|L(H)|` and `|L(K)|` for the two argument lattices.
    pub lattice_sizes: (usize, usize),
    /// `H1 ↦ |C(H1)|` for `H1 ∈ L(H)`, keyed by lattice index.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<Vec<(usize, usize)>>,
}

impl SdReport {
    fn new(group: &str, pairs: u64, lh: usize, lk: usize) -> SdReport {
        SdReport {
            group: group.to_string(),
            value: Fraction::new(pairs, (lh * lk) as u64),
            pair_count: pairs,
            lattice_sizes: (lh, lk),
            breakdown: None,
        }
    }

    /// `value · |L(H)| · |L(K)| = pair_count`.
    pub fn is_integral(&self) -> bool {
        let (a, b) = self.lattice_sizes;
        self.value.clone() * Fraction::from_int(a as u64 * b as u64) == Fraction::from_int(self.pair_count)
    }
}

/// `sd(G)`: the fraction of ordered pairs of subgroups that permute.
pub fn sd(lat: &Lattice) -> SdReport {
    let mut r = sd_rel_idx(lat, lat.top_index());
    r.lattice_sizes = (lat.len(), lat.len());
    r
}

/// `sd(H, G)` over `L(H) × L(G)`.
pub fn sd_rel(lat: &Lattice, h: &SubgroupSet) -> Result<SdReport> {
    Ok(sd_rel_idx(lat, lat.index_of(h)?))
}

pub fn sd_rel_idx(lat: &Lattice, h: usize) -> SdReport {
    let counts = lat.commuting_counts();
    let breakdown: Vec<(usize, usize)> = lat.below(h).iter().map(|i| (i, counts[i])).collect();
    let pairs: u64 = breakdown.iter().map(|&(_, c)| c as u64).sum();
    let mut r = SdReport::new(lat.group().label(), pairs, breakdown.len(), lat.len());
    r.breakdown = Some(breakdown);
    r
}

/// `sd(H, K)` over `L(H) × L(K)`; symmetric in its arguments.
pub fn sd_pair(lat: &Lattice, h: &SubgroupSet, k: &SubgroupSet) -> Result<SdReport> {
    Ok(sd_pair_idx(lat, lat.index_of(h)?, lat.index_of(k)?))
}

pub fn sd_pair_idx(lat: &Lattice, h: usize, k: usize) -> SdReport {
    let (lh, lk) = (lat.below(h), lat.below(k));
    let pairs = lh.iter().map(|a| lk.iter().filter(|&b| lat.permutes_idx(a, b)).count() as u64).sum();
    SdReport::new(lat.group().label(), pairs, lh.count(), lk.count())
}

/// Largest argument count accepted by [`sd_nary`] (`n!` reorderings each).
pub const MAX_NARY: usize = 6;

fn set_product(g: &GroupTable, a: &BitSet, b: &BitSet) -> BitSet {
    let mut out = BitSet::new(g.order());
    let bs: Vec<Elem> = b.iter().collect();
    for x in a.iter() {
        for &y in &bs {
            out.insert(g.mul(x, y));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    crate::perm::all_perms(n).into_iter().map(|p| p.images().iter().map(|&i| i as usize).collect()).collect()
}

/// `sd(H_1, ..., H_n)`: the fraction of tuples `(K_1, ..., K_n) ∈ ∏ L(H_i)`
/// whose set product `K_1 ⋯ K_n` is the same for every reordering.
pub fn sd_nary(lat: &Lattice, subgroups: &[SubgroupSet]) -> Result<SdReport> {
    let n = subgroups.len();
    if n == 0 || n > MAX_NARY {
        return Err(Error::InvalidParameter(format!("n-ary degree takes 1..={MAX_NARY} subgroups, got {n}")));
    }
    let idx: Vec<usize> = subgroups.iter().map(|h| lat.index_of(h)).collect::<Result<_>>()?;
    let g = lat.group();
    let lists: Vec<Vec<usize>> = idx.iter().map(|&i| lat.below(i).iter().collect()).collect();
    let sizes: Vec<usize> = lists.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().product();
    let orders = permutations(n);
    let mut memo: HashMap<Vec<usize>, BitSet> = HashMap::new();
    let mut product_of = |tuple: &[usize]| -> BitSet {
        if let Some(p) = memo.get(tuple) {
            return p.clone();
        }
        let mut acc = lat.subgroup(tuple[0]).members().clone();
        for &k in &tuple[1..] {
            acc = set_product(g, &acc, lat.subgroup(k).members());
        }
        memo.insert(tuple.to_vec(), acc.clone());
        acc
    };
    let mut pairs = 0u64;
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        let tuple: Vec<usize> = digits.iter().zip(&lists).map(|(&d, l)| l[d]).collect();
        let base = product_of(&tuple);
        let ok = orders.iter().skip(1).all(|sigma| {
            let t: Vec<usize> = sigma.iter().map(|&s| tuple[s]).collect();
            product_of(&t) == base
        });
        if ok {
            pairs += 1;
        }
        for k in (0..n).rev() {
            digits[k] += 1;
            if digits[k] < sizes[k] {
                break;
            }
            digits[k] = 0;
        }
    }
    let denom: usize = sizes.iter().product();
    Ok(SdReport {
        group: g.label().to_string(),
        value: Fraction::new(pairs, denom as u64),
        pair_count: pairs,
        lattice_sizes: (sizes[0], denom / sizes[0]),
        breakdown: None,
    })
}

/// `d(G)`: the fraction of ordered element pairs that commute.
pub fn d_group(g: &GroupTable) -> Fraction {
    let n = g.order();
    let c = (0..n).map(|x| (0..n).filter(|&y| g.commute(x, y)).count() as u64).sum::<u64>();
    Fraction::new(c, (n * n) as u64)
}

/// `d(H, G)` over `H × G`.
pub fn d_rel(g: &GroupTable, h: &SubgroupSet) -> Result<Fraction> {
    if !h.same_ambient(g) {
        return Err(Error::AmbientMismatch);
    }
    let c = h.elements().map(|x| (0..g.order()).filter(|&y| g.commute(x, y)).count() as u64).sum::<u64>();
    Ok(Fraction::new(c, (h.size() * g.order()) as u64))
}

/// One intersection of maximal subgroups in the inclusion–exclusion formula.
#[derive(Clone, Debug, Serialize)]
pub struct MaximalTerm {
    pub subgroup: usize,
    pub order: usize,
    /// `Σ (-1)^(|F|-1)` over the families `F` of maximal subgroups meeting in
    /// this subgroup.
    pub coefficient: i64,
    pub lattice_size: usize,
    pub sd_rel: Fraction,
}

/// The distinct intersections of maximal subgroups with their signed family
/// counts; `sd_rel` is computed once per distinct subgroup.
pub fn maximal_terms(lat: &Lattice) -> Vec<MaximalTerm> {
    lat.signed_intersection_counts()
        .into_iter()
        .map(|(k, c)| MaximalTerm {
            subgroup: k,
            order: lat.subgroup(k).size(),
            coefficient: c,
            lattice_size: lat.sub_lattice_size(k),
            sd_rel: sd_rel_idx(lat, k).value,
        })
        .collect()
}

/// `sd(G)` through inclusion–exclusion over the maximal subgroups:
/// `(1 + Σ_F (-1)^(|F|-1) |L(∩F)| sd(∩F, G)) / |L(G)|`.
pub fn sd_via_maximal(lat: &Lattice) -> Fraction {
    let sum: Fraction = maximal_terms(lat)
        .into_iter()
        .map(|t| Fraction::from_int(t.coefficient * t.lattice_size as i64) * t.sd_rel)
        .sum();
    (Fraction::one() + sum) / Fraction::from_int(lat.len() as u64)
}

/// Distinct subgroups arising as intersections of at least two distinct
/// maximal subgroups.
pub fn multi_maximal_intersections(lat: &Lattice) -> Vec<usize> {
    let ms = lat.maximal_subgroups();
    let mut seen = BitSet::new(lat.len());
    let mut frontier = Vec::new();
    for (a, &i) in ms.iter().enumerate() {
        for &j in &ms[a + 1..] {
            let k = lat.meet(i, j);
            if seen.insert(k) {
                frontier.push(k);
            }
        }
    }
    while let Some(k) = frontier.pop() {
        for &m in ms {
            let k2 = lat.meet(k, m);
            if seen.insert(k2) {
                frontier.push(k2);
            }
        }
    }
    seen.iter().collect()
}

/// Whether every intersection of two or more distinct maximal subgroups has
/// relative degree 1.
pub fn hypothesis_holds(lat: &Lattice) -> bool {
    multi_maximal_intersections(lat).into_iter().all(|k| sd_rel_idx(lat, k).value.is_one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MaximalFormula {
    /// `1 - (1/|L(G)|) Σ_i |L(M_i)| (1 - sd(M_i, G))`
    SingleSum,
    /// `1 - (1/|L(G)|²) Σ_{i,j} |L(M_i)| |L(M_j)| (1 - sd(M_i, M_j))`
    DoubleSum,
}

/// The simplified maximal-subgroup formulas; refuses to evaluate when the
/// intersection hypothesis fails.
pub fn sd_via_maximal_simplified(lat: &Lattice, formula: MaximalFormula) -> Result<Fraction> {
    if !hypothesis_holds(lat) {
        return Err(Error::Hypothesis(format!(
            "some intersection of maximal subgroups of {} has relative degree below 1",
            lat.group().label()
        )));
    }
    let ms = lat.maximal_subgroups();
    let n = Fraction::from_int(lat.len() as u64);
    let one = Fraction::one();
    let lsize = |i: usize| Fraction::from_int(lat.sub_lattice_size(i) as u64);
    Ok(match formula {
        MaximalFormula::SingleSum => {
            let s: Fraction = ms.iter().map(|&m| lsize(m) * (&one - &sd_rel_idx(lat, m).value)).sum();
            &one - &(s / n)
        }
        MaximalFormula::DoubleSum => {
            let mut s = Fraction::zero();
            for &a in ms {
                for &b in ms {
                    s = s + lsize(a) * lsize(b) * (&one - &sd_pair_idx(lat, a, b).value);
                }
            }
            &one - &(s / (&n * &n))
        }
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BoundCheck {
    pub bound: Fraction,
    pub holds: bool,
}

impl BoundCheck {
    fn new(value: &Fraction, bound: Fraction) -> BoundCheck {
        BoundCheck { holds: value >= &bound, bound }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientBound {
    /// Lattice index of the normal subgroup `H1 ≤ H` factored out.
    pub normal: usize,
    pub check: BoundCheck,
}

/// The four lower bounds on `sd(H, G)`.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBounds {
    pub subgroup: usize,
    pub value: Fraction,
    /// `(|L(H)|/|L(G)|) sd(H) + 1/|L(G)|`, for `H ≠ G`.
    pub subgroup_bound: Option<BoundCheck>,
    /// `|N(G)| / |L(G)|`.
    pub normal_bound: BoundCheck,
    /// `(Σ_{H1 ∈ L(H)} |L(H1)| + |I(H1)|) / (|L(H)||L(G)|)`.
    pub overgroup_bound: BoundCheck,
    /// `|L(H/H1)||L(G/H1)| sd(H/H1, G/H1) / (|L(H)||L(G)|)` for every
    /// `H1 ≤ H` normal in `G`.
    pub quotient_bounds: Vec<QuotientBound>,
}

impl LowerBounds {
    pub fn all_hold(&self) -> bool {
        self.subgroup_bound.as_ref().is_none_or(|b| b.holds)
            && self.normal_bound.holds
            && self.overgroup_bound.holds
            && self.quotient_bounds.iter().all(|q| q.check.holds)
    }
}

/// Quotient lattices `L(G/N)` for the normal subgroups of `G`, built on
/// demand and shared across bound evaluations.
pub struct QuotientLattices<'a> {
    lat: &'a Lattice,
    cache: HashMap<usize, (Lattice, Vec<usize>)>,
}

impl<'a> QuotientLattices<'a> {
    pub fn new(lat: &'a Lattice) -> Self {
        QuotientLattices { lat, cache: HashMap::new() }
    }

    fn get(&mut self, n: usize) -> &(Lattice, Vec<usize>) {
        let lat = self.lat;
        self.cache.entry(n).or_insert_with(|| {
            let (q, map) =
                quotient_group(lat.group(), lat.subgroup(n).members()).expect("normal subgroup yields a quotient");
            (Lattice::enumerate(Arc::new(q)), map)
        })
    }

    /// `|L(H/N)| |L(G/N)| sd(H/N, G/N)` as a pair count.
    fn quotient_pairs(&mut self, h: usize, n: usize) -> u64 {
        let members: Vec<Elem> = self.lat.subgroup(h).elements().collect();
        let (ql, map) = self.get(n);
        let image = BitSet::from_indices(ql.group().order(), members.iter().map(|&x| map[x]));
        let qi = ql.index_of_set(&image).expect("image of a subgroup is a subgroup");
        sd_rel_idx(ql, qi).pair_count
    }
}

pub fn lower_bounds(lat: &Lattice, h: &SubgroupSet) -> Result<LowerBounds> {
    let i = lat.index_of(h)?;
    Ok(lower_bounds_with(&mut QuotientLattices::new(lat), i))
}

pub fn lower_bounds_with(quotients: &mut QuotientLattices<'_>, h: usize) -> LowerBounds {
    let lat = quotients.lat;
    let rel = sd_rel_idx(lat, h);
    let value = rel.value.clone();
    let lh = lat.sub_lattice_size(h) as u64;
    let lg = lat.len() as u64;
    let frac = |p: u64, q: u64| Fraction::new(p, q);

    let subgroup_bound = (h != lat.top_index()).then(|| {
        let own = sd_pair_idx(lat, h, h).value;
        BoundCheck::new(&value, frac(lh, lg) * own + frac(1, lg))
    });
    let normal_bound = BoundCheck::new(&value, frac(lat.normal_subgroups().len() as u64, lg));
    let over: u64 = lat.below(h).iter().map(|h1| (lat.sub_lattice_size(h1) + lat.above(h1).count() - 1) as u64).sum();
    let overgroup_bound = BoundCheck::new(&value, frac(over, lh * lg));
    let normals: Vec<usize> = lat.normal_subgroups().iter().copied().filter(|&n| lat.below(h).contains(n)).collect();
    let quotient_bounds = normals
        .into_iter()
        .map(|n| {
            let pairs = quotients.quotient_pairs(h, n);
            QuotientBound { normal: n, check: BoundCheck::new(&value, frac(pairs, lh * lg)) }
        })
        .collect();
    LowerBounds { subgroup: h, value, subgroup_bound, normal_bound, overgroup_bound, quotient_bounds }
}

/// Both sides of the coprime direct-product identity
/// `sd(∏ H_i, ∏ G_i) = ∏ sd(H_i, G_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    pub group: String,
    pub direct: Fraction,
    pub product: Fraction,
    pub factor_values: Vec<Fraction>,
    pub equal: bool,
}

fn gcd(a: usize, b: usize) -> usize {
    num_integer::gcd(a, b)
}

/// Builds `∏ G_i`, embeds `∏ H_i`, and compares the relative degree computed
/// on the product with the product of the factor degrees.
pub fn verify_coprime_product(factors: &[&GroupTable], sub_factors: &[SubgroupSet]) -> Result<ProductCheck> {
    if factors.len() != sub_factors.len() || factors.is_empty() {
        return Err(Error::InvalidParameter("one subgroup per factor required".into()));
    }
    for (a, fa) in factors.iter().enumerate() {
        for fb in &factors[a + 1..] {
            if gcd(fa.order(), fb.order()) != 1 {
                return Err(Error::Hypothesis(format!(
                    "factor orders {} and {} are not coprime",
                    fa.order(),
                    fb.order()
                )));
            }
        }
    }
    for (f, h) in factors.iter().zip(sub_factors) {
        if !h.same_ambient(f) {
            return Err(Error::AmbientMismatch);
        }
    }
    let prod = Arc::new(direct_product(factors, DEFAULT_MAX_ORDER)?);
    let plat = Lattice::enumerate(prod);
    let flats: Vec<Lattice> = factors.iter().map(|f| Lattice::enumerate(Arc::new((*f).clone()))).collect();
    let frefs: Vec<&Lattice> = flats.iter().collect();
    let idx: Vec<usize> = flats
        .iter()
        .zip(sub_factors)
        .map(|(fl, h)| fl.index_of(&SubgroupSet::new(fl.group(), h.members().clone())?))
        .collect::<Result<_>>()?;
    coprime_product_check(&plat, &frefs, &idx)
}

/// The product identity on already enumerated lattices; `plat` must be the
/// lattice of the direct product of the factor groups, in factor order.
pub fn coprime_product_check(plat: &Lattice, factors: &[&Lattice], subs: &[usize]) -> Result<ProductCheck> {
    let groups: Vec<&GroupTable> = factors.iter().map(|l| l.group()).collect();
    let sets: Vec<SubgroupSet> = factors.iter().zip(subs).map(|(l, &i)| l.subgroup(i).clone()).collect();
    let prod = plat.group();
    if prod.order() != groups.iter().map(|g| g.order()).product::<usize>() {
        return Err(Error::AmbientMismatch);
    }
    let embedded = embed_product(prod, &groups, &sets);
    let direct = sd_rel(plat, &embedded)?.value;
    let factor_values: Vec<Fraction> = factors.iter().zip(subs).map(|(l, &i)| sd_rel_idx(l, i).value).collect();
    let product: Fraction = factor_values.iter().cloned().product();
    Ok(ProductCheck { group: prod.label().to_string(), equal: direct == product, direct, product, factor_values })
}

/// `∏ H_i` inside the product table (lexicographic tuple indexing).
pub fn embed_product(prod: &GroupTable, factors: &[&GroupTable], subs: &[SubgroupSet]) -> SubgroupSet {
    let mut elems = vec![0usize];
    for (f, h) in factors.iter().zip(subs) {
        elems = elems.iter().flat_map(|&acc| h.elements().map(move |x| acc * f.order() + x)).collect();
    }
    SubgroupSet::trusted(prod, BitSet::from_indices(prod.order(), elems))
}

/// Projects a subgroup of `∏ G_i` onto each factor.
pub fn decompose(prod: &GroupTable, factors: &[&GroupTable], h: &SubgroupSet) -> Result<Vec<SubgroupSet>> {
    if !h.same_ambient(prod) {
        return Err(Error::AmbientMismatch);
    }
    let mut proj: Vec<BitSet> = factors.iter().map(|f| BitSet::new(f.order())).collect();
    for x in h.elements() {
        let mut rest = x;
        for (k, f) in factors.iter().enumerate().rev() {
            proj[k].insert(rest % f.order());
            rest /= f.order();
        }
    }
    factors.iter().zip(proj).map(|(f, p)| SubgroupSet::new(f, p)).collect()
}

/// One conjugacy class of subgroups and its relative degree.
#[derive(Clone, Debug, Serialize)]
pub struct ProfileEntry {
    pub class: usize,
    pub representative: usize,
    pub order: usize,
    pub class_size: usize,
    pub value: Fraction,
    /// Every member of the class has the same relative degree.
    pub consistent: bool,
}

/// `sd_G` restricted to conjugacy classes of subgroups.
pub fn sd_profile(lat: &Lattice) -> Vec<ProfileEntry> {
    lat.conjugacy_classes()
        .iter()
        .enumerate()
        .map(|(c, members)| {
            let values: Vec<Fraction> = members.iter().map(|&i| sd_rel_idx(lat, i).value).collect();
            ProfileEntry {
                class: c,
                representative: members[0],
                order: lat.subgroup(members[0]).size(),
                class_size: members.len(),
                consistent: values.iter().all(|v| v == &values[0]),
                value: values[0].clone(),
            }
        })
        .collect()
}

/// Groups `sd_rel` values by value: classes sharing a value that are not
/// conjugate witness that `sd_G` does not separate classes.
pub fn profile_collisions(profile: &[ProfileEntry]) -> BTreeMap<Fraction, Vec<usize>> {
    let mut m: BTreeMap<Fraction, Vec<usize>> = BTreeMap::new();
    for e in profile {
        m.entry(e.value.clone()).or_default().push(e.class);
    }
    m.retain(|_, v| v.len() > 1);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    fn lat(g: GroupTable) -> Lattice {
        Lattice::enumerate(Arc::new(g))
    }

    fn gen(l: &Lattice, names: &[&str]) -> SubgroupSet {
        let g = l.group();
        let e: Vec<Elem> = names.iter().map(|n| g.element_by_name(n).unwrap()).collect();
        SubgroupSet::generated(g, &e)
    }

    #[test]
    fn sd_values() {
        assert_eq!(sd(&lat(make_alternating(4).unwrap())).value, Fraction::new(16, 25));
        let s3 = sd(&lat(make_symmetric(3).unwrap()));
        assert_eq!(s3.value, Fraction::new(5, 6));
        assert_eq!(s3.pair_count, 30);
        assert!(s3.is_integral());
        assert!(sd(&lat(make_cyclic(12).unwrap())).value.is_one());
    }

    #[test]
    fn relative_values() {
        let l = lat(make_symmetric(3).unwrap());
        let g = l.group();
        assert!(sd_rel(&l, &gen(&l, &["(1,2,3)"])).unwrap().value.is_one());
        assert_eq!(sd_rel(&l, &SubgroupSet::whole(g)).unwrap().value, sd(&l).value);
        let t = gen(&l, &["(1,2)"]);
        assert_eq!(sd_rel(&l, &t).unwrap().value, Fraction::new(5, 6));
        assert_eq!(sd_pair(&l, &t, &gen(&l, &["(1,3)"])).unwrap().value, Fraction::new(3, 4));
        assert!(sd_pair(&l, &t, &SubgroupSet::trivial(g)).unwrap().value.is_one());

        let d8 = lat(make_dihedral(8).unwrap());
        assert_eq!(sd_rel(&d8, &gen(&d8, &["y"])).unwrap().value, Fraction::new(9, 10));
        assert_eq!(sd_rel(&d8, &gen(&d8, &["xy"])).unwrap().value, Fraction::new(9, 10));
    }

    #[test]
    fn sd_pair_of_h_with_itself_is_sd_of_h() {
        let l = lat(make_symmetric(4).unwrap());
        for i in 0..l.len() {
            let own = lat(induced_group(l.group(), l.subgroup(i).members()).unwrap());
            assert_eq!(sd_pair_idx(&l, i, i).value, sd(&own).value);
        }
    }

    #[test]
    fn element_degrees() {
        assert!(d_group(&make_cyclic(7).unwrap()).is_one());
        assert_eq!(d_group(&make_symmetric(3).unwrap()), Fraction::new(1, 2));
        assert_eq!(d_group(&make_symmetric(4).unwrap()), Fraction::new(5, 24));
        let g = make_symmetric(3).unwrap();
        assert_eq!(d_rel(&g, &SubgroupSet::whole(&g)).unwrap(), Fraction::new(1, 2));
        // center is trivial: (1·6 + 1·6... ) pairs of <(1,2,3)> × S3
        let c3 = SubgroupSet::generated(&g, &[g.element_by_name("(1,2,3)").unwrap()]);
        assert_eq!(d_rel(&g, &c3).unwrap(), Fraction::new(6 + 3 + 3, 18));
    }

    #[test]
    fn nary_small_cases() {
        let l = lat(make_symmetric(3).unwrap());
        let g = l.group();
        let one = sd_nary(&l, &[SubgroupSet::whole(g)]).unwrap();
        assert!(one.value.is_one());
        let t = gen(&l, &["(1,2)"]);
        let u = gen(&l, &["(1,3)"]);
        assert_eq!(sd_nary(&l, &[t.clone(), u.clone()]).unwrap().value, sd_pair(&l, &t, &u).unwrap().value);
        assert!(sd_nary(&l, &[]).is_err());
        assert!(sd_nary(&l, &vec![t; 7]).is_err());
    }

    #[test]
    fn maximal_formula_matches() {
        for g in [make_cyclic(5).unwrap(), make_symmetric(4).unwrap(), make_alternating(4).unwrap()] {
            let l = lat(g);
            assert_eq!(sd_via_maximal(&l), sd(&l).value);
        }
    }

    #[test]
    fn simplified_formulas() {
        let a4 = lat(make_alternating(4).unwrap());
        assert!(hypothesis_holds(&a4));
        for f in [MaximalFormula::SingleSum, MaximalFormula::DoubleSum] {
            assert_eq!(sd_via_maximal_simplified(&a4, f).unwrap(), Fraction::new(16, 25));
        }
        let s4 = lat(make_symmetric(4).unwrap());
        assert!(!hypothesis_holds(&s4));
        assert!(matches!(sd_via_maximal_simplified(&s4, MaximalFormula::SingleSum), Err(Error::Hypothesis(_))));
        let z9 = lat(make_cyclic(9).unwrap());
        assert!(hypothesis_holds(&z9));
        assert!(sd_via_maximal_simplified(&z9, MaximalFormula::SingleSum).unwrap().is_one());
    }

    #[test]
    fn s3_bounds() {
        let l = lat(make_symmetric(3).unwrap());
        let mut q = QuotientLattices::new(&l);
        for h in 0..l.len() {
            let b = lower_bounds_with(&mut q, h);
            assert!(b.all_hold(), "{b:?}");
            assert_eq!(b.normal_bound.bound, Fraction::new(1, 2));
            let trivial = b.quotient_bounds.iter().find(|x| x.normal == 0).unwrap();
            assert_eq!(trivial.check.bound, b.value);
        }
        let a3 = gen(&l, &["(1,2,3)"]);
        let b = lower_bounds(&l, &a3).unwrap();
        assert_eq!(b.subgroup_bound.unwrap().bound, Fraction::new(1, 2));
        let top = lower_bounds(&l, &SubgroupSet::whole(l.group())).unwrap();
        assert!(top.subgroup_bound.is_none());
    }

    #[test]
    fn coprime_products() {
        let s3 = make_symmetric(3).unwrap();
        let z5 = make_cyclic(5).unwrap();
        let t = SubgroupSet::generated(&s3, &[s3.element_by_name("(1,2)").unwrap()]);
        let r = verify_coprime_product(&[&s3, &z5], &[t, SubgroupSet::whole(&z5)]).unwrap();
        assert!(r.equal);
        assert_eq!(r.direct, Fraction::new(5, 6));
        let a3 = SubgroupSet::generated(&s3, &[s3.element_by_name("(1,2,3)").unwrap()]);
        let r = verify_coprime_product(&[&s3, &z5], &[a3, SubgroupSet::whole(&z5)]).unwrap();
        assert!(r.equal && r.direct.is_one());
        let z2 = make_cyclic(2).unwrap();
        assert!(matches!(
            verify_coprime_product(&[&z2, &s3], &[SubgroupSet::whole(&z2), SubgroupSet::whole(&s3)]),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn decompose_recovers_factors() {
        let s3 = make_symmetric(3).unwrap();
        let z5 = make_cyclic(5).unwrap();
        let prod = direct_product(&[&s3, &z5], 720).unwrap();
        let t = SubgroupSet::generated(&s3, &[s3.element_by_name("(1,3)").unwrap()]);
        let h = embed_product(&prod, &[&s3, &z5], &[t.clone(), SubgroupSet::trivial(&z5)]);
        assert!(prod.is_subgroup(h.members()));
        let parts = decompose(&prod, &[&s3, &z5], &h).unwrap();
        assert_eq!(parts[0], t);
        assert_eq!(parts[1].size(), 1);
    }

    #[test]
    fn profile_dihedral() {
        let l = lat(make_dihedral(8).unwrap());
        let p = sd_profile(&l);
        assert!(p.iter().all(|e| e.consistent));
        let y = l.index_of(&gen(&l, &["y"])).unwrap();
        let xy = l.index_of(&gen(&l, &["xy"])).unwrap();
        let (cy, cxy) = (l.class_of(y), l.class_of(xy));
        assert_ne!(cy, cxy);
        assert_eq!(p[cy].value, Fraction::new(9, 10));
        assert_eq!(p[cxy].value, Fraction::new(9, 10));
        let coll = profile_collisions(&p);
        assert!(coll[&Fraction::new(9, 10)].contains(&cy));
    }
}
