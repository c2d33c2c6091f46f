//! Finite groups as multiplication tables, with the subgroup lattice, conjugation
//! action on subgroups, double cosets and the subconjugacy order computed eagerly
//! at construction.
//!
//! Element `0` is always the identity. Subgroups are numbered in canonical order:
//! by order, then by the sorted list of element indices. The trivial subgroup is
//! therefore [`SubgroupId`] `0` and the whole group is the last id.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest group order accepted at load time.
pub const MAX_GROUP_ORDER: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupId(pub usize);

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subgroup stored as its sorted element list plus a membership mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    fn new(elements: Vec<usize>, order: usize) -> Self {
        let mut member = vec![false; order];
        for &g in &elements {
            member[g] = true;
        }
        Subgroup { elements, member }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.member[g]
    }

    /// Position of `g` in the sorted element list.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    /// Minimal element index of the double coset.
    pub rep: usize,
    pub elements: Vec<usize>,
}

pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    subgroups: Vec<Subgroup>,
    index: HashMap<Vec<usize>, SubgroupId>,
    contains: Vec<bool>,
    conj: Vec<SubgroupId>,
    subconj: Vec<bool>,
    class_rep: Vec<SubgroupId>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("subgroups", &self.subgroups.len())
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table; `table[a][b]` is `a*b`.
    pub fn from_table(name: impl Into<String>, table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("group table is empty"));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::Unsupported(format!(
                "group order {n} exceeds {MAX_GROUP_ORDER}"
            )));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "group table row {i} has wrong length"
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::invalid(format!(
                        "group table entry {x} out of range"
                    )));
                }
                mul.push(x);
            }
        }
        for a in 0..n {
            if mul[a] != a || mul[a * n] != a {
                return Err(Error::invalid("element 0 must be the identity"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::invalid(format!(
                            "multiplication is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    if mul[b * n + a] != 0 {
                        return Err(Error::invalid(format!(
                            "element {a} has no two-sided inverse"
                        )));
                    }
                    inv[a] = b;
                    break;
                }
            }
            if inv[a] == usize::MAX {
                return Err(Error::invalid(format!("element {a} has no inverse")));
            }
        }
        Ok(Self::build(name.into(), n, mul, inv))
    }

    /// Builds the group generated by permutations of `{0..degree-1}`. Elements are
    /// numbered in lexicographic order of their images, so the identity is `0`.
    /// The product `g*h` is the composite "apply `h`, then `g`".
    pub fn from_permutations(name: impl Into<String>, gens: &[Vec<usize>]) -> Result<Self> {
        let degree = gens.first().map_or(0, Vec::len);
        for g in gens {
            if g.len() != degree {
                return Err(Error::invalid("generators act on sets of different sizes"));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::invalid(format!("{g:?} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements: BTreeSet<Vec<usize>> = BTreeSet::new();
        elements.insert(identity.clone());
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
                if elements.insert(q.clone()) {
                    if elements.len() > MAX_GROUP_ORDER {
                        return Err(Error::Unsupported(format!(
                            "generated group exceeds order {MAX_GROUP_ORDER}"
                        )));
                    }
                    frontier.push(q);
                }
            }
        }
        let elems: Vec<Vec<usize>> = elements.into_iter().collect();
        let pos: HashMap<&Vec<usize>, usize> =
            elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|g| {
                elems
                    .iter()
                    .map(|h| {
                        let gh: Vec<usize> = h.iter().map(|&i| g[i]).collect();
                        pos[&gh]
                    })
                    .collect()
            })
            .collect();
        Self::from_table(name, &table)
    }

    pub fn cyclic(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(format!("C{n}"), &table).expect("cyclic table is a group")
    }

    pub fn klein() -> Self {
        let table: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        Self::from_table("V4", &table).expect("Klein table is a group")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(cycle);
        }
        Self::from_permutations(format!("S{n}"), &gens).expect("symmetric group")
    }

    /// Dihedral group of order `2n`, acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(format!("D{}", 2 * n), &[rot, refl]).expect("dihedral group")
    }

    pub fn quaternion() -> Self {
        // Left multiplication by i and j on the 8 unit quaternions ±1, ±i, ±j, ±k,
        // indexed as 1,-1,i,-i,j,-j,k,-k.
        let i = vec![2, 3, 1, 0, 6, 7, 5, 4];
        let j = vec![4, 5, 7, 6, 1, 0, 2, 3];
        Self::from_permutations("Q8", &[i, j]).expect("quaternion group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let table: Vec<Vec<usize>> = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        Self::from_table(format!("{}x{}", a.name(), b.name()), &table).expect("direct product")
    }

    fn build(name: String, n: usize, mul: Vec<usize>, inv: Vec<usize>) -> Self {
        let closure = |seed: &[usize]| -> Vec<usize> {
            let mut member = vec![false; n];
            member[0] = true;
            let mut elems = vec![0];
            for &s in seed {
                if !member[s] {
                    member[s] = true;
                    elems.push(s);
                }
            }
            let mut i = 0;
            while i < elems.len() {
                let a = elems[i];
                let mut j = 0;
                while j < elems.len() {
                    for p in [mul[a * n + elems[j]], mul[elems[j] * n + a]] {
                        if !member[p] {
                            member[p] = true;
                            elems.push(p);
                        }
                    }
                    j += 1;
                }
                i += 1;
            }
            elems.sort_unstable();
            elems
        };

        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in 0..n {
            found.insert(closure(&[g]));
        }
        loop {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut added = false;
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    let mut seed = a.clone();
                    seed.extend_from_slice(b);
                    if found.insert(closure(&seed)) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut lists: Vec<Vec<usize>> = found.into_iter().collect();
        lists.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let subgroups: Vec<Subgroup> = lists.into_iter().map(|e| Subgroup::new(e, n)).collect();
        let s = subgroups.len();
        let index: HashMap<Vec<usize>, SubgroupId> = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.elements.clone(), SubgroupId(i)))
            .collect();

        let mut contains = vec![false; s * s];
        for k in 0..s {
            for h in 0..s {
                contains[k * s + h] = subgroups[k]
                    .elements
                    .iter()
                    .all(|&x| subgroups[h].member[x]);
            }
        }
        let mut conj = vec![SubgroupId(0); n * s];
        for g in 0..n {
            let gi = inv[g];
            for h in 0..s {
                let mut img: Vec<usize> = subgroups[h]
                    .elements
                    .iter()
                    .map(|&x| mul[mul[g * n + x] * n + gi])
                    .collect();
                img.sort_unstable();
                conj[g * s + h] = index[&img];
            }
        }
        let mut subconj = vec![false; s * s];
        for k in 0..s {
            for h in 0..s {
                subconj[k * s + h] = (0..n).any(|g| contains[conj[g * s + k].0 * s + h]);
            }
        }
        let class_rep: Vec<SubgroupId> = (0..s)
            .map(|h| {
                (0..n)
                    .map(|g| conj[g * s + h])
                    .min()
                    .expect("nonempty group")
            })
            .collect();

        let mut group = FiniteGroup {
            name,
            order: n,
            mul,
            inv,
            subgroups,
            index,
            contains,
            conj,
            subconj,
            class_rep,
            labels: Vec::new(),
        };
        group.labels = group.compute_labels();
        group
    }

    fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    fn compute_labels(&self) -> Vec<String> {
        let base: Vec<String> = self
            .subgroups
            .iter()
            .map(|h| {
                let m = h.order();
                let els = h.elements();
                let abelian = els
                    .iter()
                    .all(|&a| els.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
                let max_order = els
                    .iter()
                    .map(|&g| self.element_order(g))
                    .max()
                    .unwrap_or(1);
                let involutions = els.iter().filter(|&&g| self.element_order(g) == 2).count();
                if m == 1 {
                    "e".to_string()
                } else if max_order == m {
                    format!("C{m}")
                } else if m == 4 {
                    "V4".to_string()
                } else if m == 6 && !abelian {
                    "S3".to_string()
                } else if m == 8 && !abelian && involutions == 1 {
                    "Q8".to_string()
                } else if m == 8 && !abelian {
                    "D8".to_string()
                } else {
                    format!("H{m}")
                }
            })
            .collect();
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for b in &base {
            *counts.entry(b.as_str()).or_default() += 1;
        }
        let mut seen: HashMap<&str, usize> = HashMap::new();
        base.iter()
            .map(|b| {
                if counts[b.as_str()] == 1 {
                    b.clone()
                } else {
                    let k = seen.entry(b.as_str()).or_default();
                    let label = format!("{b}.{k}");
                    *k += 1;
                    label
                }
            })
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup_ids(&self) -> impl Iterator<Item = SubgroupId> {
        (0..self.subgroups.len()).map(SubgroupId)
    }

    pub fn num_subgroups(&self) -> usize {
        self.subgroups.len()
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id.0]
    }

    pub fn trivial(&self) -> SubgroupId {
        SubgroupId(0)
    }

    pub fn whole(&self) -> SubgroupId {
        SubgroupId(self.subgroups.len() - 1)
    }

    pub fn label(&self, id: SubgroupId) -> &str {
        &self.labels[id.0]
    }

    /// Looks up the subgroup with exactly these elements (any order).
    pub fn find_subgroup(&self, elements: &[usize]) -> Option<SubgroupId> {
        let mut key = elements.to_vec();
        key.sort_unstable();
        key.dedup();
        self.index.get(&key).copied()
    }

    /// Subgroup generated by the given elements.
    pub fn generated(&self, gens: &[usize]) -> SubgroupId {
        let n = self.order;
        let mut member = vec![false; n];
        member[0] = true;
        let mut elems = vec![0];
        for &g in gens {
            if !member[g] {
                member[g] = true;
                elems.push(g);
            }
        }
        let mut i = 0;
        while i < elems.len() {
            let a = elems[i];
            for j in 0..elems.len() {
                let p = self.mul(a, elems[j]);
                if !member[p] {
                    member[p] = true;
                    elems.push(p);
                }
            }
            i += 1;
        }
        self.find_subgroup(&elems).expect("closure is a subgroup")
    }

    /// Resolves a textual subgroup id: `e`, `G`, a canonical index, or a label.
    pub fn resolve(&self, id: &str) -> Result<SubgroupId> {
        let id = id.trim();
        if id == "G" {
            return Ok(self.whole());
        }
        if id == "e" {
            return Ok(self.trivial());
        }
        if let Ok(i) = id.trim_start_matches('#').parse::<usize>() {
            if i < self.subgroups.len() {
                return Ok(SubgroupId(i));
            }
        }
        self.labels
            .iter()
            .position(|l| l == id)
            .map(SubgroupId)
            .ok_or_else(|| Error::invalid(format!("no subgroup with id `{id}` in {}", self.name)))
    }

    /// `K ⊆ H`.
    #[inline]
    pub fn is_subgroup(&self, k: SubgroupId, h: SubgroupId) -> bool {
        self.contains[k.0 * self.subgroups.len() + h.0]
    }

    /// `gHg⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, h: SubgroupId) -> SubgroupId {
        self.conj[g * self.subgroups.len() + h.0]
    }

    /// True iff some `G`-conjugate of `K` lies in `H`.
    pub fn is_subconjugate(&self, k: SubgroupId, h: SubgroupId) -> bool {
        self.subconj[k.0 * self.subgroups.len() + h.0]
    }

    /// True iff `bKb⁻¹ ⊆ H` for some `b` in `base`.
    pub fn is_subconjugate_in(&self, base: SubgroupId, k: SubgroupId, h: SubgroupId) -> bool {
        if base == self.whole() {
            return self.is_subconjugate(k, h);
        }
        self.subgroup(base)
            .elements()
            .iter()
            .any(|&b| self.is_subgroup(self.conjugate(b, k), h))
    }

    pub fn are_conjugate_in(&self, base: SubgroupId, k: SubgroupId, h: SubgroupId) -> bool {
        self.class_rep_in(base, k) == self.class_rep_in(base, h)
    }

    /// Canonically least member of the `base`-conjugacy class of `h`.
    pub fn class_rep_in(&self, base: SubgroupId, h: SubgroupId) -> SubgroupId {
        if base == self.whole() {
            return self.class_rep[h.0];
        }
        self.subgroup(base)
            .elements()
            .iter()
            .map(|&b| self.conjugate(b, h))
            .min()
            .expect("nonempty")
    }

    /// Some `b` in `base` with `b h b⁻¹ = target`, if one exists (least index).
    pub fn conjugator_in(
        &self,
        base: SubgroupId,
        h: SubgroupId,
        target: SubgroupId,
    ) -> Option<usize> {
        self.subgroup(base)
            .elements()
            .iter()
            .copied()
            .find(|&b| self.conjugate(b, h) == target)
    }

    pub fn intersection(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let sb = self.subgroup(b);
        let elems: Vec<usize> = self
            .subgroup(a)
            .elements()
            .iter()
            .copied()
            .filter(|&x| sb.contains(x))
            .collect();
        self.find_subgroup(&elems)
            .expect("intersection of subgroups is a subgroup")
    }

    /// All subgroups of `h`, in canonical order.
    pub fn subgroups_of(&self, h: SubgroupId) -> Vec<SubgroupId> {
        self.subgroup_ids()
            .filter(|&k| self.is_subgroup(k, h))
            .collect()
    }

    pub fn normalizer(&self, h: SubgroupId) -> SubgroupId {
        let elems: Vec<usize> = (0..self.order)
            .filter(|&g| self.conjugate(g, h) == h)
            .collect();
        self.find_subgroup(&elems)
            .expect("normalizer is a subgroup")
    }

    /// Left cosets `kH` of `h` inside `k` (requires `h ⊆ k`), ordered by their
    /// minimal element, which is the canonical representative.
    pub fn left_cosets(&self, k: SubgroupId, h: SubgroupId) -> Vec<Vec<usize>> {
        debug_assert!(self.is_subgroup(h, k));
        let mut seen = vec![false; self.order];
        let mut cosets = Vec::new();
        for &x in self.subgroup(k).elements() {
            if seen[x] {
                continue;
            }
            let mut c: Vec<usize> = self
                .subgroup(h)
                .elements()
                .iter()
                .map(|&y| self.mul(x, y))
                .collect();
            c.sort_unstable();
            for &y in &c {
                seen[y] = true;
            }
            cosets.push(c);
        }
        cosets
    }

    /// Canonical (minimal) representatives of the left cosets of `h` in `k`.
    pub fn coset_reps(&self, k: SubgroupId, h: SubgroupId) -> Vec<usize> {
        self.left_cosets(k, h).into_iter().map(|c| c[0]).collect()
    }

    /// Double cosets `K\G/H`, each with its minimal element as representative,
    /// ordered by representative (so the identity double coset comes first).
    pub fn double_cosets(&self, k: SubgroupId, h: SubgroupId) -> Vec<DoubleCoset> {
        self.double_cosets_in(self.whole(), k, h)
    }

    /// Double cosets `K\B/H` inside the subgroup `B` (requires `K, H ⊆ B`).
    pub fn double_cosets_in(
        &self,
        b: SubgroupId,
        k: SubgroupId,
        h: SubgroupId,
    ) -> Vec<DoubleCoset> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for &g in self.subgroup(b).elements() {
            if seen[g] {
                continue;
            }
            let mut elems = BTreeSet::new();
            for &x in self.subgroup(k).elements() {
                let xg = self.mul(x, g);
                for &y in self.subgroup(h).elements() {
                    elems.insert(self.mul(xg, y));
                }
            }
            for &x in &elems {
                seen[x] = true;
            }
            out.push(DoubleCoset {
                rep: g,
                elements: elems.into_iter().collect(),
            });
        }
        out
    }

    /// The Weyl group `N_G(H)/H`.
    pub fn weyl_group(&self, h: SubgroupId) -> WeylGroup {
        let n = self.normalizer(h);
        let cosets = self.left_cosets(n, h);
        let section: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
        let mut which = vec![usize::MAX; self.order];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                which[x] = i;
            }
        }
        let table: Vec<Vec<usize>> = section
            .iter()
            .map(|&a| section.iter().map(|&b| which[self.mul(a, b)]).collect())
            .collect();
        let group = FiniteGroup::from_table(format!("W({})", self.label(h)), &table)
            .expect("quotient of the normalizer is a group");
        WeylGroup { group, section }
    }
}

/// `N_G(H)/H` together with the minimal coset representative of each element.
#[derive(Debug)]
pub struct WeylGroup {
    pub group: FiniteGroup,
    pub section: Vec<usize>,
}

/// A set of subgroups of `base` closed under passing to `base`-superconjugates.
#[derive(Clone, Debug)]
pub struct UpwardClosedSet {
    group: Arc<FiniteGroup>,
    base: SubgroupId,
    members: Vec<bool>,
}

impl UpwardClosedSet {
    pub fn from_members(
        group: &Arc<FiniteGroup>,
        base: SubgroupId,
        members: &[SubgroupId],
    ) -> Result<Self> {
        let mut mask = vec![false; group.num_subgroups()];
        for &m in members {
            if !group.is_subgroup(m, base) {
                return Err(Error::invalid(format!(
                    "subgroup {m} is not contained in the base"
                )));
            }
            mask[m.0] = true;
        }
        let set = UpwardClosedSet {
            group: Arc::clone(group),
            base,
            members: mask,
        };
        for k in group.subgroups_of(base) {
            if !set.members[k.0] {
                continue;
            }
            for h in group.subgroups_of(base) {
                if group.is_subconjugate_in(base, k, h) && !set.members[h.0] {
                    return Err(Error::invalid(format!(
                        "set is not upward closed: contains {} but not {}",
                        group.label(k),
                        group.label(h)
                    )));
                }
            }
        }
        Ok(set)
    }

    /// Every subgroup of `base`; equal to the upward closure of the trivial subgroup.
    pub fn all(group: &Arc<FiniteGroup>, base: SubgroupId) -> Self {
        upward_closure(group, base, group.trivial())
    }

    pub fn base(&self) -> SubgroupId {
        self.base
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn contains(&self, h: SubgroupId) -> bool {
        self.members[h.0]
    }

    pub fn members(&self) -> Vec<SubgroupId> {
        self.group
            .subgroup_ids()
            .filter(|h| self.members[h.0])
            .collect()
    }

    pub fn is_subset_of(&self, other: &UpwardClosedSet) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }
}

impl PartialEq for UpwardClosedSet {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.members == other.members
    }
}

/// `Λ_H`: all subgroups of `base` that contain a `base`-conjugate of `h`.
pub fn upward_closure(
    group: &Arc<FiniteGroup>,
    base: SubgroupId,
    h: SubgroupId,
) -> UpwardClosedSet {
    let mut members = vec![false; group.num_subgroups()];
    for k in group.subgroups_of(base) {
        members[k.0] = group.is_subconjugate_in(base, h, k);
    }
    UpwardClosedSet {
        group: Arc::clone(group),
        base,
        members,
    }
}
