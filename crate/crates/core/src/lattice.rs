//! Subgroup lattices: enumeration and structural queries.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};

/// Most maximal subgroups for which every family intersection is listed.
pub const MAX_FAMILY_MAXIMALS: usize = 24;

/// A subgroup of a fixed ambient group, as a bitset of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupSet {
    ambient: u64,
    members: BitSet,
    size: usize,
}

impl SubgroupSet {
    /// Validates closure before accepting `members`.
    pub fn new(g: &GroupTable, members: BitSet) -> Result<SubgroupSet> {
        if !g.is_subgroup(&members) {
            return Err(Error::NotSubgroup);
        }
        Ok(Self::trusted(g, members))
    }

    pub fn generated(g: &GroupTable, gens: &[Elem]) -> SubgroupSet {
        Self::trusted(g, g.closure(gens))
    }

    pub fn whole(g: &GroupTable) -> SubgroupSet {
        Self::trusted(g, BitSet::full(g.order()))
    }

    pub fn trivial(g: &GroupTable) -> SubgroupSet {
        Self::trusted(g, g.closure(&[]))
    }

    pub(crate) fn trusted(g: &GroupTable, members: BitSet) -> SubgroupSet {
        let size = members.count();
        SubgroupSet { ambient: ambient_id(g), members, size }
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.ambient == other.ambient && self.members.is_subset(&other.members)
    }

    pub fn same_ambient(&self, g: &GroupTable) -> bool {
        self.ambient == ambient_id(g)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter()
    }
}

fn ambient_id(g: &GroupTable) -> u64 {
    u64::from_le_bytes(g.digest()[..8].try_into().unwrap())
}

fn check_ambient(g: &GroupTable, hs: &[&SubgroupSet]) -> Result<()> {
    let id = ambient_id(g);
    if hs.iter().all(|h| h.ambient == id) {
        Ok(())
    } else {
        Err(Error::AmbientMismatch)
    }
}

/// The set product `HK = {hk}`.
pub fn product_set(g: &GroupTable, h: &SubgroupSet, k: &SubgroupSet) -> Result<BitSet> {
    check_ambient(g, &[h, k])?;
    let mut out = BitSet::new(g.order());
    let ks: Vec<Elem> = k.elements().collect();
    for a in h.elements() {
        for &b in &ks {
            out.insert(g.mul(a, b));
        }
    }
    Ok(out)
}

/// Whether `HK = KH`, decided on element sets.
pub fn permutes(g: &GroupTable, h: &SubgroupSet, k: &SubgroupSet) -> Result<bool> {
    if h.is_subset(k) || k.is_subset(h) {
        check_ambient(g, &[h, k])?;
        return Ok(true);
    }
    let hk = product_set(g, h, k)?;
    let hs: Vec<Elem> = h.elements().collect();
    // |KH| = |HK|, so KH ⊆ HK suffices
    Ok(k.elements().all(|b| hs.iter().all(|&a| hk.contains(g.mul(b, a)))))
}

/// The complete subgroup lattice of a group together with its inclusion,
/// normality, maximality and conjugacy structure.
///
/// Subgroups are held in canonical order: by size, then by bitset value.
pub struct Lattice {
    group: Arc<GroupTable>,
    subgroups: Vec<SubgroupSet>,
    index: HashMap<BitSet, usize>,
    below: Vec<BitSet>,
    above: Vec<BitSet>,
    maximal: Vec<usize>,
    normal: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    join: OnceLock<Vec<u32>>,
    meet: OnceLock<Vec<u32>>,
    commuting: OnceLock<Vec<usize>>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lattice").field("group", &self.group.label()).field("subgroups", &self.subgroups.len()).finish()
    }
}

impl Lattice {
    /// Enumerates every subgroup: cyclic subgroups seed a worklist and each
    /// new subgroup is joined with every cyclic subgroup until no new
    /// subgroup appears.
    pub fn enumerate(group: Arc<GroupTable>) -> Lattice {
        let g = &*group;
        let mut cyclic_reps: Vec<Elem> = Vec::new();
        let mut found: HashMap<BitSet, Vec<Elem>> = HashMap::new();
        let mut work: VecDeque<BitSet> = VecDeque::new();
        let trivial = g.closure(&[]);
        found.insert(trivial.clone(), Vec::new());
        work.push_back(trivial);
        for x in 1..g.order() {
            let c = g.closure(&[x]);
            if !found.contains_key(&c) {
                found.insert(c.clone(), vec![x]);
                cyclic_reps.push(x);
                work.push_back(c);
            }
        }
        while let Some(h) = work.pop_front() {
            let gens = found[&h].clone();
            if h.count() == g.order() {
                continue;
            }
            for &x in &cyclic_reps {
                if h.contains(x) {
                    continue;
                }
                let mut ext = gens.clone();
                ext.push(x);
                let j = g.closure(&ext);
                if !found.contains_key(&j) {
                    found.insert(j.clone(), ext);
                    work.push_back(j);
                }
            }
        }
        Lattice::build(group.clone(), found.into_keys().collect())
            .expect("enumeration yields a conjugation-closed list")
    }

    /// Builds a lattice from an explicit list of subgroups, validating that
    /// each is a subgroup and the list has no duplicates. Completeness is not
    /// checked.
    pub fn from_subgroups(group: Arc<GroupTable>, sets: Vec<BitSet>) -> Result<Lattice> {
        let mut seen = std::collections::HashSet::new();
        for s in &sets {
            if !group.is_subgroup(s) {
                return Err(Error::NotSubgroup);
            }
            if !seen.insert(s) {
                return Err(Error::InvalidParameter("duplicate subgroup".into()));
            }
        }
        Lattice::build(group, sets)
    }

    fn build(group: Arc<GroupTable>, mut sets: Vec<BitSet>) -> Result<Lattice> {
        let g = &*group;
        sets.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
        let n = sets.len();
        if n == 0 || sets[0].count() != 1 || sets[n - 1].count() != g.order() {
            return Err(Error::InvalidParameter("subgroup list lacks the trivial subgroup or the whole group".into()));
        }
        let index: HashMap<BitSet, usize> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut below = vec![BitSet::new(n); n];
        let mut above = vec![BitSet::new(n); n];
        let sizes: Vec<usize> = sets.iter().map(BitSet::count).collect();
        for i in 0..n {
            for j in i..n {
                if sizes[j].is_multiple_of(sizes[i]) && sets[i].is_subset(&sets[j]) {
                    below[j].insert(i);
                    above[i].insert(j);
                }
            }
        }
        let top = n - 1;
        let maximal = if n == 1 {
            Vec::new()
        } else {
            (0..top).filter(|&i| above[i].iter().all(|j| j == i || j == top)).collect()
        };

        // conjugacy orbits under the generators of g
        let ggens = g.generators();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut orbit = vec![start];
            class_of[start] = cid;
            let mut k = 0;
            while k < orbit.len() {
                let h = &sets[orbit[k]];
                for &x in &ggens {
                    let mut c = BitSet::new(g.order());
                    for e in h.iter() {
                        c.insert(g.conj(e, x));
                    }
                    let ci = *index.get(&c).ok_or_else(|| {
                        Error::InvalidParameter("subgroup list is not closed under conjugation".into())
                    })?;
                    if class_of[ci] == usize::MAX {
                        class_of[ci] = cid;
                        orbit.push(ci);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        let normal = (0..n).filter(|&i| classes[class_of[i]].len() == 1).collect();
        let subgroups = sets.into_iter().map(|s| SubgroupSet::trusted(g, s)).collect();
        Ok(Lattice {
            group,
            subgroups,
            index,
            below,
            above,
            maximal,
            normal,
            class_of,
            classes,
            join: OnceLock::new(),
            meet: OnceLock::new(),
            commuting: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[SubgroupSet] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &SubgroupSet {
        &self.subgroups[i]
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    pub fn top_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn index_of(&self, h: &SubgroupSet) -> Result<usize> {
        if !h.same_ambient(&self.group) {
            return Err(Error::AmbientMismatch);
        }
        self.index.get(h.members()).copied().ok_or(Error::NotInLattice)
    }

    pub fn index_of_set(&self, members: &BitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    /// Indices of the subgroups of `H_i`, i.e. `L(H_i)` inside this lattice.
    pub fn below(&self, i: usize) -> &BitSet {
        &self.below[i]
    }

    /// Indices of the subgroups containing `H_i` (including `i`).
    pub fn above(&self, i: usize) -> &BitSet {
        &self.above[i]
    }

    pub fn sub_lattice_size(&self, i: usize) -> usize {
        self.below[i].count()
    }

    pub fn maximal_subgroups(&self) -> &[usize] {
        &self.maximal
    }

    pub fn normal_subgroups(&self) -> &[usize] {
        &self.normal
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.classes[self.class_of[i]].len() == 1
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    fn join_table(&self) -> &[u32] {
        self.join.get_or_init(|| {
            let n = self.len();
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in i..n {
                    let common = self.above[i].intersection(&self.above[j]);
                    // sizes ascend, so the first common overgroup is the join
                    let v = common.first().expect("the whole group is above everything") as u32;
                    t[i * n + j] = v;
                    t[j * n + i] = v;
                }
            }
            t
        })
    }

    fn meet_table(&self) -> &[u32] {
        self.meet.get_or_init(|| {
            let n = self.len();
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in i..n {
                    let common = self.below[i].intersection(&self.below[j]);
                    let v = common.iter().last().expect("trivial subgroup is below everything") as u32;
                    t[i * n + j] = v;
                    t[j * n + i] = v;
                }
            }
            t
        })
    }

    /// `<H_i, H_j>`.
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join_table()[i * self.len() + j] as usize
    }

    /// `H_i ∩ H_j`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet_table()[i * self.len() + j] as usize
    }

    /// `H_i H_j = H_j H_i`, via `|H_i H_j| = |H_i||H_j| / |H_i ∩ H_j|` and
    /// `H_i H_j ⊆ <H_i, H_j>`: the product is a subgroup exactly when it
    /// fills the join.
    pub fn permutes_idx(&self, i: usize, j: usize) -> bool {
        let size = |k: usize| self.subgroups[k].size();
        size(self.join(i, j)) * size(self.meet(i, j)) == size(i) * size(j)
    }

    /// `C(H)`: the subgroups of `G` permuting with `h`.
    pub fn commuting_set(&self, h: &SubgroupSet) -> Result<BitSet> {
        let i = self.index_of(h)?;
        Ok(self.commuting_set_idx(i))
    }

    pub fn commuting_set_idx(&self, i: usize) -> BitSet {
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&j| self.permutes_idx(i, j)))
    }

    /// `|C(H_i)|` for every subgroup, computed once per lattice.
    pub fn commuting_counts(&self) -> &[usize] {
        self.commuting.get_or_init(|| {
            let n = self.len();
            let mut counts = vec![0usize; n];
            for i in 0..n {
                for j in i..n {
                    if self.permutes_idx(i, j) {
                        counts[i] += 1;
                        if i != j {
                            counts[j] += 1;
                        }
                    }
                }
            }
            counts
        })
    }

    /// `I(H)`: subgroups strictly containing `h`.
    pub fn strict_overgroups(&self, h: &SubgroupSet) -> Result<BitSet> {
        let i = self.index_of(h)?;
        let mut s = self.above[i].clone();
        s.remove(i);
        Ok(s)
    }

    /// Every nonempty family of maximal subgroups (bit `k` of the key selects
    /// `maximal_subgroups()[k]`) mapped to the index of its intersection.
    /// Families are resolved bottom-up: a family's intersection is its
    /// largest-member-removed family's intersection met with that member.
    pub fn intersections_of_maximals(&self) -> Result<Vec<(u64, usize)>> {
        let r = self.maximal.len();
        if r > MAX_FAMILY_MAXIMALS {
            return Err(Error::InvalidParameter(format!("{r} maximal subgroups give too many families to list")));
        }
        let total = 1usize << r;
        let mut memo = vec![usize::MAX; total];
        let mut out = Vec::with_capacity(total.saturating_sub(1));
        for mask in 1..total {
            let hi = 63 - (mask as u64).leading_zeros() as usize;
            let rest = mask & !(1 << hi);
            let v = if rest == 0 { self.maximal[hi] } else { self.meet(memo[rest], self.maximal[hi]) };
            memo[mask] = v;
            out.push((mask as u64, v));
        }
        Ok(out)
    }

    /// For each subgroup `K` that is an intersection of maximal subgroups,
    /// `Σ (-1)^(|F|-1)` over the nonempty families `F` with `∩F = K`.
    /// Computed by folding in one maximal subgroup at a time, so the cost is
    /// linear in the number of maximal subgroups.
    pub fn signed_intersection_counts(&self) -> Vec<(usize, i64)> {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for &m in &self.maximal {
            let mut next = acc.clone();
            for (&k, &c) in &acc {
                *next.entry(self.meet(k, m)).or_insert(0) -= c;
            }
            *next.entry(m).or_insert(0) += 1;
            next.retain(|_, c| *c != 0);
            acc = next;
        }
        let mut v: Vec<(usize, i64)> = acc.into_iter().collect();
        v.sort_unstable();
        v
    }

    pub fn is_subnormal(&self, h: &SubgroupSet) -> Result<bool> {
        let i = self.index_of(h)?;
        Ok(self.is_subnormal_idx(i))
    }

    /// Descends `G = N_0 ⊵ N_1 ⊵ ...` with `N_{k+1}` the normal closure of
    /// `H` in `N_k`; `H` is subnormal iff the chain reaches `H`.
    pub fn is_subnormal_idx(&self, i: usize) -> bool {
        let g = &*self.group;
        let h = &self.subgroups[i];
        let hgens = g.generators_of(h.members());
        let mut n = BitSet::full(g.order());
        loop {
            if &n == h.members() {
                return true;
            }
            let mut conjugates = Vec::new();
            for x in n.iter() {
                for &y in &hgens {
                    conjugates.push(g.conj(y, x));
                }
            }
            conjugates.sort_unstable();
            conjugates.dedup();
            let closure = g.closure(&conjugates);
            if closure == n {
                return false;
            }
            n = closure;
        }
    }

    pub fn is_modular_element(&self, h: &SubgroupSet) -> Result<bool> {
        let i = self.index_of(h)?;
        Ok(self.is_modular_idx(i))
    }

    /// Both modular-element identities over all `X, Z` in the lattice:
    /// `X ≤ Z ⇒ X ∨ (H ∧ Z) = (X ∨ H) ∧ Z` and
    /// `H ≤ Z ⇒ H ∨ (X ∧ Z) = (H ∨ X) ∧ Z`.
    pub fn is_modular_idx(&self, h: usize) -> bool {
        let n = self.len();
        for z in 0..n {
            for x in self.below[z].iter() {
                if self.join(x, self.meet(h, z)) != self.meet(self.join(x, h), z) {
                    return false;
                }
            }
            if self.below[z].contains(h) {
                for x in 0..n {
                    if self.join(h, self.meet(x, z)) != self.meet(self.join(h, x), z) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn enumerate_subgroups(g: Arc<GroupTable>) -> Lattice {
    Lattice::enumerate(g)
}
