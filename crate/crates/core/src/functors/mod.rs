//! Mackey, Green and Tambara functors stored level by level.
//!
//! A functor lives over a subgroup `base` of the ambient group: it has a ring
//! for every subgroup of `base`, restriction/transfer/norm tables for every
//! inclusion `K ⊆ H` inside `base`, and conjugation tables `c_g` for every
//! `g ∈ base`. Keeping subgroup ids ambient lets restriction, coinduction and
//! transport between subgroups share one lattice.

mod burnside;
mod check;
mod constructors;
mod eval;
mod lemmas;
mod morphism;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, SubgroupId};
use crate::rings::{FiniteRing, GRing};

pub use burnside::{burnside_mod, BurnsideFunctor};
pub use check::{check_axioms, AxiomFamily, AxiomReport, CheckConfig, FamilyResult, Status};
pub use constructors::{
    coinduce, coinduce_with_layout, fixed_point_functor, green_counterexample,
    green_counterexample_over, CoindLayout,
};
pub use eval::{LevelMap, MapKind};
pub use lemmas::{
    check_norm_additivity_up_to_transfers, check_orthogonal_idempotent_norms,
    check_transfer_ideal_contains_one, proper_transfer_ideal, proper_transfer_span,
};
pub use morphism::{
    functor_automorphisms, functor_homomorphism, functor_isomorphism, mackey_decomposition_iso,
    TambaraMorphism,
};

/// A table-driven Mackey, Green or Tambara functor.
#[derive(Clone, PartialEq, Eq)]
pub struct TambaraData {
    group: Arc<FiniteGroup>,
    base: SubgroupId,
    levels: Vec<Option<Arc<FiniteRing>>>,
    /// `[k * nsub + h]`: `level(h) → level(k)`.
    res: Vec<Option<Vec<u32>>>,
    /// `[k * nsub + h]`: `level(k) → level(h)`.
    tr: Vec<Option<Vec<u32>>>,
    nm: Vec<Option<Vec<u32>>>,
    /// `[g * nsub + h]`: `level(h) → level(g h g⁻¹)`.
    conj: Vec<Option<Vec<u32>>>,
    has_norms: bool,
}

impl fmt::Debug for TambaraData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self
            .subgroups()
            .into_iter()
            .map(|h| format!("{}:{}", self.group.label(h), self.level(h).size()))
            .collect();
        write!(
            f,
            "{}({} over {}; {})",
            if self.has_norms { "Tambara" } else { "Green" },
            self.group.name(),
            self.group.label(self.base),
            sizes.join(", ")
        )
    }
}

fn identity_table(n: usize) -> Vec<u32> {
    (0..n as u32).collect()
}

fn compose(first: &[u32], second: &[u32]) -> Vec<u32> {
    first.iter().map(|&y| second[y as usize]).collect()
}

/// Assembles a functor from possibly partial tables. Missing identity maps,
/// composites along chains and conjugations generated by the given ones are
/// filled in; anything still missing is an error.
#[derive(Clone, Debug)]
pub struct TambaraBuilder {
    group: Arc<FiniteGroup>,
    base: SubgroupId,
    levels: BTreeMap<SubgroupId, Arc<FiniteRing>>,
    res: BTreeMap<(SubgroupId, SubgroupId), Vec<usize>>,
    tr: BTreeMap<(SubgroupId, SubgroupId), Vec<usize>>,
    nm: BTreeMap<(SubgroupId, SubgroupId), Vec<usize>>,
    conj: BTreeMap<(usize, SubgroupId), Vec<usize>>,
    has_norms: bool,
}

impl TambaraBuilder {
    pub fn new(group: &Arc<FiniteGroup>, base: SubgroupId, has_norms: bool) -> Self {
        TambaraBuilder {
            group: Arc::clone(group),
            base,
            levels: BTreeMap::new(),
            res: BTreeMap::new(),
            tr: BTreeMap::new(),
            nm: BTreeMap::new(),
            conj: BTreeMap::new(),
            has_norms,
        }
    }

    pub fn level(&mut self, h: SubgroupId, ring: Arc<FiniteRing>) -> &mut Self {
        self.levels.insert(h, ring);
        self
    }

    /// `Res^h_k: level(h) → level(k)`.
    pub fn res(&mut self, k: SubgroupId, h: SubgroupId, table: Vec<usize>) -> &mut Self {
        self.res.insert((k, h), table);
        self
    }

    /// `Tr^h_k: level(k) → level(h)`.
    pub fn tr(&mut self, k: SubgroupId, h: SubgroupId, table: Vec<usize>) -> &mut Self {
        self.tr.insert((k, h), table);
        self
    }

    /// `Nm^h_k: level(k) → level(h)`.
    pub fn nm(&mut self, k: SubgroupId, h: SubgroupId, table: Vec<usize>) -> &mut Self {
        self.nm.insert((k, h), table);
        self
    }

    /// `c_g: level(h) → level(g h g⁻¹)`.
    pub fn conj(&mut self, g: usize, h: SubgroupId, table: Vec<usize>) -> &mut Self {
        self.conj.insert((g, h), table);
        self
    }

    pub fn build(&self) -> Result<TambaraData> {
        let group = &self.group;
        let nsub = group.num_subgroups();
        let subs = group.subgroups_of(self.base);
        let mut levels = vec![None; nsub];
        for &h in &subs {
            let ring = self
                .levels
                .get(&h)
                .ok_or_else(|| Error::invalid(format!("missing level {}", group.label(h))))?;
            levels[h.0] = Some(Arc::clone(ring));
        }
        for h in self.levels.keys() {
            if !group.is_subgroup(*h, self.base) {
                return Err(Error::invalid(format!(
                    "level {} is not a subgroup of {}",
                    group.label(*h),
                    group.label(self.base)
                )));
            }
        }
        let size = |h: SubgroupId| {
            levels[h.0]
                .as_ref()
                .map(|r: &Arc<FiniteRing>| r.size())
                .unwrap_or(0)
        };
        let edge_tables =
            |given: &BTreeMap<(SubgroupId, SubgroupId), Vec<usize>>, name: &str, down: bool| {
                let mut out: Vec<Option<Vec<u32>>> = vec![None; nsub * nsub];
                for (&(k, h), t) in given {
                    if !group.is_subgroup(k, h) || !group.is_subgroup(h, self.base) {
                        return Err(Error::invalid(format!(
                            "{name} {}:{} is not an inclusion inside the base",
                            group.label(k),
                            group.label(h)
                        )));
                    }
                    let (from, to) = if down { (h, k) } else { (k, h) };
                    if t.len() != size(from) || t.iter().any(|&x| x >= size(to)) {
                        return Err(Error::invalid(format!(
                            "{name} {}:{} table has wrong shape",
                            group.label(k),
                            group.label(h)
                        )));
                    }
                    out[k.0 * nsub + h.0] = Some(t.iter().map(|&x| x as u32).collect());
                }
                for &h in &subs {
                    out[h.0 * nsub + h.0].get_or_insert_with(|| identity_table(size(h)));
                }
                // composites along chains k ⊆ m ⊆ h
                loop {
                    let mut changed = false;
                    for &k in &subs {
                        for &h in &subs {
                            if out[k.0 * nsub + h.0].is_some() || !group.is_subgroup(k, h) {
                                continue;
                            }
                            for &m in &subs {
                                if m == k
                                    || m == h
                                    || !group.is_subgroup(k, m)
                                    || !group.is_subgroup(m, h)
                                {
                                    continue;
                                }
                                if let (Some(a), Some(b)) =
                                    (&out[k.0 * nsub + m.0], &out[m.0 * nsub + h.0])
                                {
                                    out[k.0 * nsub + h.0] =
                                        Some(if down { compose(b, a) } else { compose(a, b) });
                                    changed = true;
                                    break;
                                }
                            }
                        }
                    }
                    if !changed {
                        break;
                    }
                }
                for &k in &subs {
                    for &h in &subs {
                        if group.is_subgroup(k, h) && out[k.0 * nsub + h.0].is_none() {
                            return Err(Error::invalid(format!(
                                "missing {name} {}:{}",
                                group.label(k),
                                group.label(h)
                            )));
                        }
                    }
                }
                Ok(out)
            };
        let res = edge_tables(&self.res, "res", true)?;
        let tr = edge_tables(&self.tr, "tr", false)?;
        let nm = if self.has_norms {
            edge_tables(&self.nm, "nm", false)?
        } else {
            if !self.nm.is_empty() {
                return Err(Error::invalid("norm tables given for a Green functor"));
            }
            vec![None; nsub * nsub]
        };
        let base_elems = group.subgroup(self.base).elements();
        let mut conj: Vec<Option<Vec<u32>>> = vec![None; group.order() * nsub];
        for (&(g, h), t) in &self.conj {
            if !group.subgroup(self.base).contains(g) || !group.is_subgroup(h, self.base) {
                return Err(Error::invalid(format!(
                    "conjugation {g}@{} outside the base",
                    group.label(h)
                )));
            }
            let to = group.conjugate(g, h);
            if t.len() != size(h) || t.iter().any(|&x| x >= size(to)) {
                return Err(Error::invalid(format!(
                    "conjugation {g}@{} table has wrong shape",
                    group.label(h)
                )));
            }
            conj[g * nsub + h.0] = Some(t.iter().map(|&x| x as u32).collect());
        }
        for &h in &subs {
            for &g in group.subgroup(h).elements() {
                conj[g * nsub + h.0].get_or_insert_with(|| identity_table(size(h)));
            }
        }
        // c_{ab} = c_a ∘ c_b
        loop {
            let mut changed = false;
            for &a in base_elems {
                for &b in base_elems {
                    let ab = group.mul(a, b);
                    for &h in &subs {
                        if conj[ab * nsub + h.0].is_some() {
                            continue;
                        }
                        let bh = group.conjugate(b, h);
                        if let (Some(cb), Some(ca)) =
                            (&conj[b * nsub + h.0], &conj[a * nsub + bh.0])
                        {
                            conj[ab * nsub + h.0] = Some(compose(cb, ca));
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for &g in base_elems {
            for &h in &subs {
                if conj[g * nsub + h.0].is_none() {
                    return Err(Error::invalid(format!(
                        "missing conjugation {g}@{}",
                        group.label(h)
                    )));
                }
            }
        }
        Ok(TambaraData {
            group: Arc::clone(group),
            base: self.base,
            levels,
            res,
            tr,
            nm,
            conj,
            has_norms: self.has_norms,
        })
    }
}

impl TambaraData {
    pub(crate) fn nsub(&self) -> usize {
        self.group.num_subgroups()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn base(&self) -> SubgroupId {
        self.base
    }

    pub fn has_norms(&self) -> bool {
        self.has_norms
    }

    /// Subgroups of the base, in canonical order.
    pub fn subgroups(&self) -> Vec<SubgroupId> {
        self.group.subgroups_of(self.base)
    }

    /// Pairs `(k, h)` with `k ⊆ h ⊆ base`, including `k = h`.
    pub fn inclusions(&self) -> Vec<(SubgroupId, SubgroupId)> {
        let subs = self.subgroups();
        let mut out = Vec::new();
        for &h in &subs {
            for &k in &subs {
                if self.group.is_subgroup(k, h) {
                    out.push((k, h));
                }
            }
        }
        out
    }

    pub fn level(&self, h: SubgroupId) -> &Arc<FiniteRing> {
        self.levels[h.0]
            .as_ref()
            .unwrap_or_else(|| panic!("{} is not a subgroup of the base", self.group.label(h)))
    }

    pub fn bottom(&self) -> &Arc<FiniteRing> {
        self.level(self.group.trivial())
    }

    pub fn is_zero(&self) -> bool {
        self.subgroups()
            .iter()
            .all(|&h| self.level(h).is_zero_ring())
    }

    pub fn res_table(&self, k: SubgroupId, h: SubgroupId) -> &[u32] {
        self.res[k.0 * self.nsub() + h.0]
            .as_deref()
            .expect("not an inclusion")
    }

    pub fn tr_table(&self, k: SubgroupId, h: SubgroupId) -> &[u32] {
        self.tr[k.0 * self.nsub() + h.0]
            .as_deref()
            .expect("not an inclusion")
    }

    pub fn nm_table(&self, k: SubgroupId, h: SubgroupId) -> &[u32] {
        assert!(self.has_norms, "Green functor has no norms");
        self.nm[k.0 * self.nsub() + h.0]
            .as_deref()
            .expect("not an inclusion")
    }

    pub fn conj_table(&self, g: usize, h: SubgroupId) -> &[u32] {
        self.conj[g * self.nsub() + h.0]
            .as_deref()
            .expect("conjugation outside the base")
    }

    #[inline]
    pub fn res(&self, k: SubgroupId, h: SubgroupId, x: usize) -> usize {
        self.res_table(k, h)[x] as usize
    }

    #[inline]
    pub fn tr(&self, k: SubgroupId, h: SubgroupId, x: usize) -> usize {
        self.tr_table(k, h)[x] as usize
    }

    #[inline]
    pub fn nm(&self, k: SubgroupId, h: SubgroupId, x: usize) -> usize {
        self.nm_table(k, h)[x] as usize
    }

    #[inline]
    pub fn conj(&self, g: usize, h: SubgroupId, x: usize) -> usize {
        self.conj_table(g, h)[x] as usize
    }

    /// Replaces one table; used to build mutation fixtures.
    pub fn with_table(
        mut self,
        kind: MapKind,
        k: SubgroupId,
        h: SubgroupId,
        table: Vec<usize>,
    ) -> Self {
        let i = k.0 * self.nsub() + h.0;
        let t = Some(table.into_iter().map(|x| x as u32).collect());
        match kind {
            MapKind::Res => self.res[i] = t,
            MapKind::Tr => self.tr[i] = t,
            MapKind::Nm => self.nm[i] = t,
        }
        self
    }

    /// Replaces a conjugation table; used to build mutation fixtures.
    pub fn with_conj(mut self, g: usize, h: SubgroupId, table: Vec<usize>) -> Self {
        let i = g * self.nsub() + h.0;
        self.conj[i] = Some(table.into_iter().map(|x| x as u32).collect());
        self
    }

    /// The same levels and maps with the norms forgotten.
    pub fn forget_norms(&self) -> TambaraData {
        let mut t = self.clone();
        t.has_norms = false;
        t.nm = vec![None; t.nm.len()];
        t
    }

    /// A builder pre-filled with every table of `self`.
    pub fn to_builder(&self) -> TambaraBuilder {
        let mut b = TambaraBuilder::new(&self.group, self.base, self.has_norms);
        let widen = |t: &[u32]| t.iter().map(|&x| x as usize).collect::<Vec<_>>();
        for h in self.subgroups() {
            b.level(h, Arc::clone(self.level(h)));
            for &g in self.group.subgroup(self.base).elements() {
                b.conj(g, h, widen(self.conj_table(g, h)));
            }
        }
        for (k, h) in self.inclusions() {
            b.res(k, h, widen(self.res_table(k, h)));
            b.tr(k, h, widen(self.tr_table(k, h)));
            if self.has_norms {
                b.nm(k, h, widen(self.nm_table(k, h)));
            }
        }
        b
    }

    /// The bottom level with the conjugation action of the base.
    pub fn bottom_gring(&self) -> GRing {
        let e = self.group.trivial();
        GRing::from_fn(Arc::clone(self.bottom()), &self.group, self.base, |g, x| {
            self.conj(g, e, x)
        })
    }

    /// The zero functor: every level is the zero ring.
    pub fn zero(group: &Arc<FiniteGroup>, base: SubgroupId, has_norms: bool) -> TambaraData {
        let zero = Arc::new(FiniteRing::zero_ring());
        let nsub = group.num_subgroups();
        let mut levels = vec![None; nsub];
        for h in group.subgroups_of(base) {
            levels[h.0] = Some(Arc::clone(&zero));
        }
        let mut edges = vec![None; nsub * nsub];
        for h in group.subgroups_of(base) {
            for k in group.subgroups_of(h) {
                edges[k.0 * nsub + h.0] = Some(vec![0]);
            }
        }
        let mut conj = vec![None; group.order() * nsub];
        for &g in group.subgroup(base).elements() {
            for h in group.subgroups_of(base) {
                conj[g * nsub + h.0] = Some(vec![0]);
            }
        }
        TambaraData {
            group: Arc::clone(group),
            base,
            levels,
            res: edges.clone(),
            tr: edges.clone(),
            nm: if has_norms {
                edges
            } else {
                vec![None; nsub * nsub]
            },
            conj,
            has_norms,
        }
    }

    /// Restriction to a subgroup `k` of the base: keep the levels below `k`.
    pub fn restrict(&self, k: SubgroupId) -> Result<TambaraData> {
        let group = &self.group;
        if !group.is_subgroup(k, self.base) {
            return Err(Error::invalid(format!(
                "{} is not a subgroup of {}",
                group.label(k),
                group.label(self.base)
            )));
        }
        let nsub = self.nsub();
        let mut t = self.clone();
        t.base = k;
        for h in group.subgroup_ids() {
            if !group.is_subgroup(h, k) {
                t.levels[h.0] = None;
                for x in group.subgroup_ids() {
                    for tables in [&mut t.res, &mut t.tr, &mut t.nm] {
                        tables[h.0 * nsub + x.0] = None;
                        tables[x.0 * nsub + h.0] = None;
                    }
                }
                for g in 0..group.order() {
                    t.conj[g * nsub + h.0] = None;
                }
            }
        }
        for g in 0..group.order() {
            if !group.subgroup(k).contains(g) {
                for h in group.subgroup_ids() {
                    t.conj[g * nsub + h.0] = None;
                }
            }
        }
        Ok(t)
    }

    /// `^g T`: the functor over `g·base·g⁻¹` with `level(P) = T(g⁻¹Pg)`.
    pub fn transport(&self, g: usize) -> TambaraData {
        let group = &self.group;
        let nsub = self.nsub();
        let gi = group.inv(g);
        let back = |p: SubgroupId| group.conjugate(gi, p);
        let new_base = group.conjugate(g, self.base);
        let mut t = TambaraData {
            group: Arc::clone(group),
            base: new_base,
            levels: vec![None; nsub],
            res: vec![None; nsub * nsub],
            tr: vec![None; nsub * nsub],
            nm: vec![None; nsub * nsub],
            conj: vec![None; group.order() * nsub],
            has_norms: self.has_norms,
        };
        let subs = group.subgroups_of(new_base);
        for &p in &subs {
            t.levels[p.0] = self.levels[back(p).0].clone();
            for &q in &subs {
                if group.is_subgroup(q, p) {
                    let (i, j) = (q.0 * nsub + p.0, back(q).0 * nsub + back(p).0);
                    t.res[i] = self.res[j].clone();
                    t.tr[i] = self.tr[j].clone();
                    t.nm[i] = self.nm[j].clone();
                }
            }
            for &x in group.subgroup(new_base).elements() {
                let y = group.mul(group.mul(gi, x), g);
                t.conj[x * nsub + p.0] = self.conj[y * nsub + back(p).0].clone();
            }
        }
        t
    }

    /// Levelwise product with componentwise structure maps.
    pub fn product(parts: &[&TambaraData]) -> Result<TambaraData> {
        let first = parts
            .first()
            .ok_or_else(|| Error::invalid("empty product of functors"))?;
        for p in parts {
            if *p.group != *first.group || p.base != first.base {
                return Err(Error::GroupMismatch(
                    "product of functors over different groups".into(),
                ));
            }
            if p.has_norms != first.has_norms {
                return Err(Error::invalid(
                    "product of a Green functor with a Tambara functor",
                ));
            }
        }
        if parts.len() == 1 {
            return Ok((*first).clone());
        }
        let group = &first.group;
        let nsub = first.nsub();
        let subs = first.subgroups();
        let mut levels = vec![None; nsub];
        let mut sizes: Vec<Vec<usize>> = vec![Vec::new(); nsub];
        for &h in &subs {
            let rings: Vec<&FiniteRing> = parts.iter().map(|p| p.level(h).as_ref()).collect();
            sizes[h.0] = rings.iter().map(|r| r.size()).collect();
            levels[h.0] = Some(Arc::new(FiniteRing::product(&rings)?));
        }
        let lift = |from: SubgroupId,
                    to: SubgroupId,
                    table: &dyn Fn(&TambaraData) -> &[u32]|
         -> Vec<u32> {
            let n: usize = sizes[from.0].iter().product();
            (0..n)
                .map(|x| {
                    let comps = FiniteRing::product_parts(&sizes[from.0], x);
                    let out: Vec<usize> = comps
                        .iter()
                        .zip(parts)
                        .map(|(&c, p)| table(p)[c] as usize)
                        .collect();
                    FiniteRing::product_index(&sizes[to.0], &out) as u32
                })
                .collect()
        };
        let mut res = vec![None; nsub * nsub];
        let mut tr = vec![None; nsub * nsub];
        let mut nm = vec![None; nsub * nsub];
        for (k, h) in first.inclusions() {
            let i = k.0 * nsub + h.0;
            res[i] = Some(lift(h, k, &|p| p.res_table(k, h)));
            tr[i] = Some(lift(k, h, &|p| p.tr_table(k, h)));
            if first.has_norms {
                nm[i] = Some(lift(k, h, &|p| p.nm_table(k, h)));
            }
        }
        let mut conj = vec![None; group.order() * nsub];
        for &g in group.subgroup(first.base).elements() {
            for &h in &subs {
                conj[g * nsub + h.0] =
                    Some(lift(h, group.conjugate(g, h), &|p| p.conj_table(g, h)));
            }
        }
        Ok(TambaraData {
            group: Arc::clone(group),
            base: first.base,
            levels,
            res,
            tr,
            nm,
            conj,
            has_norms: first.has_norms,
        })
    }

    /// Level sizes in canonical subgroup order.
    pub fn level_sizes(&self) -> Vec<(SubgroupId, usize)> {
        self.subgroups()
            .into_iter()
            .map(|h| (h, self.level(h).size()))
            .collect()
    }

    /// All restrictions are injective and the bottom level is a product of fields
    /// permuted transitively by the base, i.e. it has no proper invariant ideals.
    /// This is only a checkable stand-in for being field-like.
    pub fn is_field_like_surrogate(&self) -> bool {
        let injective = self.inclusions().into_iter().all(|(k, h)| {
            let t = self.res_table(k, h);
            let mut seen = vec![false; self.level(k).size()];
            t.iter()
                .all(|&y| !std::mem::replace(&mut seen[y as usize], true))
        });
        let bottom = self.bottom();
        injective
            && !bottom.is_zero_ring()
            && bottom.primitive_idempotents().is_ok_and(|prims| {
                let r = self.bottom_gring();
                let mut orbit: Vec<usize> = self
                    .group
                    .subgroup(self.base)
                    .elements()
                    .iter()
                    .map(|&g| r.act(g, prims[0]))
                    .collect();
                orbit.sort_unstable();
                orbit.dedup();
                orbit.len() == prims.len()
                    && prims
                        .into_iter()
                        .all(|e| bottom.corner(e).is_ok_and(|(c, _)| c.is_field()))
            })
    }
}
