//! Property suites evaluated exhaustively over a corpus of groups.
//!
//! Reports are deterministic: groups appear in corpus order, properties in
//! suite order, and nothing time- or machine-dependent is recorded.

use std::sync::Arc;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::cache::LatticeCache;
use crate::commutativity::{
    coprime_product_check, hypothesis_holds, lower_bounds_with, sd, sd_pair_idx, sd_rel_idx, sd_via_maximal,
    sd_via_maximal_simplified, MaximalFormula, QuotientLattices,
};
use crate::error::Error;
use crate::expr::GroupExpr;
use crate::group::DEFAULT_MAX_ORDER;
use crate::lattice::{permutes, Lattice};
use crate::oracle::{oracle_subgroup_sets, ORACLE_BOUND};
use crate::parallel::map_ordered;
use crate::zm::verify_bijection_with;

pub const VERIFY_SCHEMA: &str = "subcomm.verify/1";

/// Failures kept per property; the count is always exact.
pub const MAX_WITNESSES: usize = 10;

/// Tuples examined per coprime product.
pub const MAX_PRODUCT_TUPLES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Conjugate subgroups share one relative degree.
    Conjugacy,
    /// `sd(∏H_i, ∏G_i) = ∏ sd(H_i, G_i)` for coprime factors.
    CoprimeProduct,
    /// The inclusion–exclusion expansion over maximal subgroups equals `sd(G)`.
    MaximalIdentity,
    /// The single- and double-sum formulas, where their hypothesis holds.
    SimplifiedFormulas,
    /// The four lower bounds on `sd(H, G)`.
    Bounds,
    /// `sd(H, G) = 1` against permutability of every subgroup of `H`, and
    /// against modularity plus subnormality (of `H`, and of every subgroup of
    /// `H`).
    SdOne,
    /// The ZM triple parametrization is a bijection onto the lattice.
    ZmBijection,
    /// Lattice enumeration agrees with the brute-force oracle.
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Conjugacy,
        Suite::CoprimeProduct,
        Suite::MaximalIdentity,
        Suite::SimplifiedFormulas,
        Suite::Bounds,
        Suite::SdOne,
        Suite::ZmBijection,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Conjugacy => "conjugacy",
            Suite::CoprimeProduct => "coprime-product",
            Suite::MaximalIdentity => "maximal-identity",
            Suite::SimplifiedFormulas => "simplified-formulas",
            Suite::Bounds => "bounds",
            Suite::SdOne => "sd-one",
            Suite::ZmBijection => "zm-bijection",
            Suite::Oracle => "oracle",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// The default corpus as expression strings. `D` names by order.
pub fn default_corpus() -> Vec<String> {
    let mut v: Vec<String> = (1..=24).map(|n| format!("Z{n}")).collect();
    v.extend((4..=24).step_by(2).map(|n| format!("D{n}")));
    for s in [
        "S3",
        "S4",
        "S5",
        "A4",
        "A5",
        "Z2xZ2",
        "Z2xZ2xZ2",
        "S3xZ5",
        "Z2xZ9",
        "ZM(3,2,2)",
        "ZM(5,4,2)",
        "ZM(7,3,2)",
        "ZM(9,2,8)",
    ] {
        v.push(s.to_string());
    }
    v
}

/// Parses corpus entries, dropping invalid ones with a warning each.
pub fn load_corpus(entries: &[String]) -> (Vec<GroupExpr>, Vec<String>) {
    let mut ok = Vec::new();
    let mut warnings = Vec::new();
    for e in entries {
        match GroupExpr::parse(e) {
            Ok(x) => ok.push(x),
            Err(err) => warnings.push(format!("dropping corpus entry {e:?}: {err}")),
        }
    }
    (ok, warnings)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Failure {
    /// Lattice indices of the witnessing subgroups.
    pub subgroups: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PropertyResult {
    pub suite: Suite,
    pub property: String,
    pub checked: u64,
    pub failed: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub failures: Vec<Failure>,
}

struct Tally {
    suite: Suite,
    property: &'static str,
    checked: u64,
    failed: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn new(suite: Suite, property: &'static str) -> Tally {
        Tally { suite, property, checked: 0, failed: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, subgroups: &[usize], detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(Failure { subgroups: subgroups.to_vec(), detail: detail() });
            }
        }
    }

    fn done(self) -> PropertyResult {
        PropertyResult {
            suite: self.suite,
            property: self.property.into(),
            checked: self.checked,
            failed: self.failed,
            passed: self.failed == 0,
            skipped: None,
            failures: self.failures,
        }
    }
}

fn skipped(suite: Suite, property: &str, why: impl Into<String>) -> PropertyResult {
    PropertyResult {
        suite,
        property: property.into(),
        checked: 0,
        failed: 0,
        passed: true,
        skipped: Some(why.into()),
        failures: Vec::new(),
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroupResult {
    pub group: String,
    pub order: Option<usize>,
    pub lattice_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub cap_exceeded: bool,
    pub results: Vec<PropertyResult>,
}

impl GroupResult {
    pub fn failed(&self) -> u64 {
        self.results.iter().map(|r| r.failed).sum()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub groups: usize,
    pub properties: usize,
    pub checks: u64,
    pub failures: u64,
    pub errors: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub max_order: usize,
    pub suites: Vec<Suite>,
    pub groups: Vec<GroupResult>,
    pub summary: Summary,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failures == 0
    }

    pub fn any_cap_exceeded(&self) -> bool {
        self.groups.iter().any(|g| g.cap_exceeded)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_order: usize,
    pub jobs: usize,
    pub cache: Option<LatticeCache>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_order: DEFAULT_MAX_ORDER, jobs: 1, cache: None }
    }
}

/// Runs `suites` over `corpus`, `jobs` groups at a time.
pub fn run_verify(corpus: &[GroupExpr], suites: &[Suite], opts: &VerifyOptions) -> VerifyReport {
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let groups = map_ordered(corpus, opts.jobs, |e| verify_group(e, &suites, opts));
    let summary = Summary {
        groups: groups.len(),
        properties: groups.iter().map(|g| g.results.len()).sum(),
        checks: groups.iter().flat_map(|g| &g.results).map(|r| r.checked).sum(),
        failures: groups.iter().map(GroupResult::failed).sum(),
        errors: groups.iter().filter(|g| g.error.is_some()).count(),
    };
    VerifyReport { schema: VERIFY_SCHEMA, max_order: opts.max_order, suites, groups, summary }
}

pub fn verify_group(expr: &GroupExpr, suites: &[Suite], opts: &VerifyOptions) -> GroupResult {
    let label = expr.to_string();
    let g = match expr.build(opts.max_order) {
        Ok(g) => Arc::new(g),
        Err(e) => {
            return GroupResult {
                group: label,
                order: None,
                lattice_size: None,
                cap_exceeded: matches!(e, Error::OrderCap { .. }),
                error: Some(e.to_string()),
                results: Vec::new(),
            }
        }
    };
    let lat = match &opts.cache {
        Some(c) => c.get_or_enumerate(g.clone()).0,
        None => Lattice::enumerate(g.clone()),
    };
    let mut results = Vec::new();
    for &s in suites {
        results.extend(run_suite(s, expr, &lat, opts));
    }
    GroupResult {
        group: label,
        order: Some(g.order()),
        lattice_size: Some(lat.len()),
        error: None,
        cap_exceeded: false,
        results,
    }
}

fn run_suite(suite: Suite, expr: &GroupExpr, lat: &Lattice, opts: &VerifyOptions) -> Vec<PropertyResult> {
    match suite {
        Suite::Conjugacy => vec![conjugacy(lat)],
        Suite::CoprimeProduct => vec![coprime(expr, lat, opts)],
        Suite::MaximalIdentity => maximal_identity(lat),
        Suite::SimplifiedFormulas => simplified(lat),
        Suite::Bounds => bounds(lat),
        Suite::SdOne => sd_one(lat),
        Suite::ZmBijection => zm(expr, lat),
        Suite::Oracle => vec![oracle(lat)],
    }
}

fn conjugacy(lat: &Lattice) -> PropertyResult {
    let mut t = Tally::new(Suite::Conjugacy, "class-constant-sd");
    for members in lat.conjugacy_classes() {
        let v0 = sd_rel_idx(lat, members[0]).value;
        for &m in &members[1..] {
            let v = sd_rel_idx(lat, m).value;
            t.check(v == v0, &[members[0], m], || format!("{v0} != {v}"));
        }
    }
    t.done()
}

fn coprime(expr: &GroupExpr, lat: &Lattice, opts: &VerifyOptions) -> PropertyResult {
    const P: &str = "product-identity";
    let factors = expr.factors();
    if factors.len() < 2 {
        return skipped(Suite::CoprimeProduct, P, "not a direct product");
    }
    let orders: Vec<usize> = match factors.iter().map(|f| f.build(opts.max_order)).collect::<Result<Vec<_>, _>>() {
        Ok(gs) => gs.iter().map(|g| g.order()).collect(),
        Err(e) => return skipped(Suite::CoprimeProduct, P, e.to_string()),
    };
    for (a, &x) in orders.iter().enumerate() {
        if orders[a + 1..].iter().any(|&y| num_integer::gcd(x, y) != 1) {
            return skipped(Suite::CoprimeProduct, P, "factor orders are not pairwise coprime");
        }
    }
    let flats: Vec<Lattice> =
        factors.iter().map(|f| Lattice::enumerate(Arc::new(f.build(opts.max_order).expect("built above")))).collect();
    let frefs: Vec<&Lattice> = flats.iter().collect();
    let mut t = Tally::new(Suite::CoprimeProduct, P);
    let mut digits = vec![0usize; flats.len()];
    let total: usize = flats.iter().map(Lattice::len).product();
    for _ in 0..total.min(MAX_PRODUCT_TUPLES) {
        match coprime_product_check(lat, &frefs, &digits) {
            Ok(c) => t.check(c.equal, &digits, || format!("direct {} != product {}", c.direct, c.product)),
            Err(e) => t.check(false, &digits, || e.to_string()),
        }
        for k in (0..digits.len()).rev() {
            digits[k] += 1;
            if digits[k] < flats[k].len() {
                break;
            }
            digits[k] = 0;
        }
    }
    t.done()
}

fn maximal_identity(lat: &Lattice) -> Vec<PropertyResult> {
    let mut t = Tally::new(Suite::MaximalIdentity, "sd-equals-maximal-expansion");
    let direct = sd(lat).value;
    let via = sd_via_maximal(lat);
    t.check(direct == via, &[lat.top_index()], || format!("sd {direct} != expansion {via}"));
    let mut i = Tally::new(Suite::MaximalIdentity, "integrality");
    for h in 0..lat.len() {
        let r = sd_rel_idx(lat, h);
        i.check(
            r.is_integral() && r.value.is_positive() && r.pair_count <= (r.lattice_sizes.0 * r.lattice_sizes.1) as u64,
            &[h],
            || format!("{} with {} pairs over {:?}", r.value, r.pair_count, r.lattice_sizes),
        );
    }
    vec![t.done(), i.done()]
}

fn simplified(lat: &Lattice) -> Vec<PropertyResult> {
    let names = [(MaximalFormula::SingleSum, "single-sum"), (MaximalFormula::DoubleSum, "double-sum")];
    if !hypothesis_holds(lat) {
        return names
            .iter()
            .map(|&(_, n)| {
                skipped(Suite::SimplifiedFormulas, n, "an intersection of maximal subgroups has degree below 1")
            })
            .collect();
    }
    let direct = sd(lat).value;
    names
        .iter()
        .map(|&(f, n)| {
            let mut t = Tally::new(Suite::SimplifiedFormulas, n);
            match sd_via_maximal_simplified(lat, f) {
                Ok(v) => t.check(v == direct, &[lat.top_index()], || format!("{v} != sd {direct}")),
                Err(e) => t.check(false, &[lat.top_index()], || e.to_string()),
            }
            t.done()
        })
        .collect()
}

fn bounds(lat: &Lattice) -> Vec<PropertyResult> {
    let s = Suite::Bounds;
    let mut sub = Tally::new(s, "subgroup-bound");
    let mut normal = Tally::new(s, "normal-bound");
    let mut over = Tally::new(s, "overgroup-bound");
    let mut quot = Tally::new(s, "quotient-bound");
    let mut eq = Tally::new(s, "quotient-by-trivial-equality");
    let mut pc = Tally::new(s, "pair-count-form");
    let mut q = QuotientLattices::new(lat);
    for h in 0..lat.len() {
        let b = lower_bounds_with(&mut q, h);
        if let Some(c) = &b.subgroup_bound {
            sub.check(c.holds, &[h], || format!("{} < {}", b.value, c.bound));
            let rel = sd_rel_idx(lat, h).pair_count;
            let own = sd_pair_idx(lat, h, h).pair_count;
            let lh = lat.sub_lattice_size(h) as u64;
            pc.check(rel >= own + lh, &[h], || format!("{rel} < {own} + {lh}"));
        }
        normal.check(b.normal_bound.holds, &[h], || format!("{} < {}", b.value, b.normal_bound.bound));
        over.check(b.overgroup_bound.holds, &[h], || format!("{} < {}", b.value, b.overgroup_bound.bound));
        for qb in &b.quotient_bounds {
            quot.check(qb.check.holds, &[h, qb.normal], || format!("{} < {}", b.value, qb.check.bound));
            if qb.normal == lat.trivial_index() {
                eq.check(qb.check.bound == b.value, &[h], || format!("{} != {}", qb.check.bound, b.value));
            }
        }
    }
    vec![sub.done(), normal.done(), over.done(), quot.done(), eq.done(), pc.done()]
}

fn sd_one(lat: &Lattice) -> Vec<PropertyResult> {
    let g = lat.group();
    let n = lat.len();
    // Subgroups permuting with every subgroup of G; element-level products
    // where affordable, independent of the lattice's permutability test.
    let mut permutable = BitSet::new(n);
    for k in 0..n {
        let all = (0..n).all(|j| {
            if g.order() <= ORACLE_BOUND {
                permutes(g, lat.subgroup(k), lat.subgroup(j)).expect("same ambient")
            } else {
                lat.permutes_idx(k, j)
            }
        });
        if all {
            permutable.insert(k);
        }
    }
    let modsub: Vec<bool> = (0..n).map(|h| lat.is_modular_idx(h) && lat.is_subnormal_idx(h)).collect();
    let mut a = Tally::new(Suite::SdOne, "sd-one-iff-all-subgroups-permutable");
    // The characterization as usually quoted, for H itself. It cannot hold
    // for H = G whenever sd(G) < 1, since G is modular and subnormal in G.
    let mut b = Tally::new(Suite::SdOne, "sd-one-iff-modular-and-subnormal");
    // The same characterization applied to every subgroup of H.
    let mut c = Tally::new(Suite::SdOne, "sd-one-iff-all-subgroups-modular-and-subnormal");
    let mut d = Tally::new(Suite::SdOne, "permutable-iff-modular-and-subnormal");
    for h in 0..n {
        let one = sd_rel_idx(lat, h).value.is_one();
        let perm = lat.below(h).is_subset(&permutable);
        let all_ms = lat.below(h).iter().all(|k| modsub[k]);
        a.check(one == perm, &[h], || format!("sd = 1: {one}, all permutable: {perm}"));
        b.check(one == modsub[h], &[h], || format!("sd = 1: {one}, modular and subnormal: {}", modsub[h]));
        c.check(one == all_ms, &[h], || format!("sd = 1: {one}, all subgroups modular and subnormal: {all_ms}"));
        let p = permutable.contains(h);
        d.check(p == modsub[h], &[h], || format!("permutable: {p}, modular and subnormal: {}", modsub[h]));
    }
    vec![a.done(), b.done(), c.done(), d.done()]
}

fn zm(expr: &GroupExpr, lat: &Lattice) -> Vec<PropertyResult> {
    let GroupExpr::Zm(p) = expr else {
        return vec![
            skipped(Suite::ZmBijection, "triple-bijection", "not a ZM group"),
            skipped(Suite::ZmBijection, "sylow-cyclic", "not a ZM group"),
        ];
    };
    let mut t = Tally::new(Suite::ZmBijection, "triple-bijection");
    let r = verify_bijection_with(lat, p);
    t.check(r.ok, &r.missing, || {
        format!(
            "{} triples, {} subgroups, {} collisions, {} invalid, {} missing",
            r.triples,
            r.lattice_size,
            r.collisions.len(),
            r.invalid.len(),
            r.missing.len()
        )
    });
    let mut s = Tally::new(Suite::ZmBijection, "sylow-cyclic");
    let g = lat.group();
    let order = g.order();
    for prime in (2..=order).filter(|&q| order.is_multiple_of(q) && (2..q).all(|d| q % d != 0)) {
        let mut pk = 1;
        while order.is_multiple_of(pk * prime) {
            pk *= prime;
        }
        for h in (0..lat.len()).filter(|&h| lat.subgroup(h).size() == pk) {
            let cyclic = lat.subgroup(h).elements().any(|x| g.element_order(x) == pk);
            s.check(cyclic, &[h], || format!("Sylow {prime}-subgroup of order {pk} is not cyclic"));
        }
    }
    vec![t.done(), s.done()]
}

fn oracle(lat: &Lattice) -> PropertyResult {
    let mut t = Tally::new(Suite::Oracle, "lattice-equals-oracle");
    match oracle_subgroup_sets(lat.group()) {
        Ok(sets) => {
            let same = sets.len() == lat.len() && lat.subgroups().iter().all(|h| sets.contains(h.members()));
            t.check(same, &[], || format!("oracle finds {} subgroups, enumeration {}", sets.len(), lat.len()));
            t.done()
        }
        Err(e) => skipped(Suite::Oracle, "lattice-equals-oracle", e.to_string()),
    }
}
