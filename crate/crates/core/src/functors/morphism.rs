//! Morphisms of Tambara functors, isomorphism search and the Mackey
//! decomposition isomorphism.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::SubgroupId;
use crate::rings::{subgroup_generators, FiniteRing};
use crate::search::{self, Mode, SearchConfig, Structure};

use super::{constructors::coinduce_with_layout, TambaraData};

/// Levelwise ring homomorphisms commuting with every structure map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TambaraMorphism {
    pub source: Arc<TambaraData>,
    pub target: Arc<TambaraData>,
    /// Indexed by subgroup id; `None` off the base lattice.
    maps: Vec<Option<Vec<u32>>>,
}

impl TambaraMorphism {
    /// Builds and verifies a morphism from one table per subgroup of the base.
    pub fn new(
        source: Arc<TambaraData>,
        target: Arc<TambaraData>,
        tables: Vec<(SubgroupId, Vec<usize>)>,
    ) -> Result<Self> {
        if *source.group() != *target.group() || source.base() != target.base() {
            return Err(Error::GroupMismatch(
                "morphism between functors over different groups".into(),
            ));
        }
        let mut maps = vec![None; source.nsub()];
        for (h, table) in tables {
            maps[h.0] = Some(table.into_iter().map(|x| x as u32).collect());
        }
        let m = TambaraMorphism {
            source,
            target,
            maps,
        };
        m.verify()?;
        Ok(m)
    }

    pub fn identity(t: &Arc<TambaraData>) -> Self {
        let mut maps = vec![None; t.nsub()];
        for h in t.subgroups() {
            maps[h.0] = Some((0..t.level(h).size() as u32).collect());
        }
        TambaraMorphism {
            source: Arc::clone(t),
            target: Arc::clone(t),
            maps,
        }
    }

    pub fn table(&self, h: SubgroupId) -> &[u32] {
        self.maps[h.0].as_deref().expect("subgroup of the base")
    }

    pub fn apply(&self, h: SubgroupId, x: usize) -> usize {
        self.table(h)[x] as usize
    }

    /// Checks every level is a ring homomorphism of the right shape and that
    /// the maps commute with res, tr, conjugations and (if both have them) nm.
    pub fn verify(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        let group = s.group();
        let bad = |msg: String| Err(Error::VerificationFailed(msg));
        for h in s.subgroups() {
            let (a, b) = (s.level(h), t.level(h));
            let Some(m) = self.maps[h.0].as_ref() else {
                return bad(format!("no map at level {}", group.label(h)));
            };
            if m.len() != a.size() || m.iter().any(|&y| y as usize >= b.size()) {
                return bad(format!(
                    "map at level {} has the wrong shape",
                    group.label(h)
                ));
            }
            let f = |x: usize| m[x] as usize;
            if f(a.one()) != b.one() {
                return bad(format!(
                    "map at level {} does not preserve 1",
                    group.label(h)
                ));
            }
            let gens = a.additive_generators();
            for x in a.elements() {
                for &g in &gens {
                    if f(a.add(x, g)) != b.add(f(x), f(g)) || f(a.mul(x, g)) != b.mul(f(x), f(g)) {
                        return bad(format!(
                            "map at level {} is not a ring homomorphism",
                            group.label(h)
                        ));
                    }
                }
            }
        }
        let norms = s.has_norms() && t.has_norms();
        for (k, h) in s.inclusions() {
            if k == h {
                continue;
            }
            for x in s.level(h).elements() {
                if self.apply(k, s.res(k, h, x)) != t.res(k, h, self.apply(h, x)) {
                    return bad(format!(
                        "does not commute with res {}→{} at {x}",
                        group.label(h),
                        group.label(k)
                    ));
                }
            }
            for x in s.level(k).elements() {
                if self.apply(h, s.tr(k, h, x)) != t.tr(k, h, self.apply(k, x)) {
                    return bad(format!(
                        "does not commute with tr {}→{} at {x}",
                        group.label(k),
                        group.label(h)
                    ));
                }
                if norms && self.apply(h, s.nm(k, h, x)) != t.nm(k, h, self.apply(k, x)) {
                    return bad(format!(
                        "does not commute with nm {}→{} at {x}",
                        group.label(k),
                        group.label(h)
                    ));
                }
            }
        }
        for g in subgroup_generators(group, s.base()) {
            for h in s.subgroups() {
                let gh = group.conjugate(g, h);
                for x in s.level(h).elements() {
                    if self.apply(gh, s.conj(g, h, x)) != t.conj(g, h, self.apply(h, x)) {
                        return bad(format!(
                            "does not commute with c_{g} on {} at {x}",
                            group.label(h)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TambaraMorphism) -> Result<TambaraMorphism> {
        if *self.target != *other.source {
            return Err(Error::invalid("morphisms are not composable"));
        }
        let mut maps = vec![None; self.maps.len()];
        for h in self.source.subgroups() {
            maps[h.0] = Some(
                self.table(h)
                    .iter()
                    .map(|&x| other.table(h)[x as usize])
                    .collect(),
            );
        }
        Ok(TambaraMorphism {
            source: Arc::clone(&self.source),
            target: Arc::clone(&other.target),
            maps,
        })
    }

    pub fn is_iso(&self) -> bool {
        self.source.subgroups().into_iter().all(|h| {
            let n = self.target.level(h).size();
            let table = self.table(h);
            let mut seen = vec![false; n];
            table.len() == n
                && table
                    .iter()
                    .all(|&y| !std::mem::replace(&mut seen[y as usize], true))
        })
    }

    pub fn inverse(&self) -> Option<TambaraMorphism> {
        if !self.is_iso() {
            return None;
        }
        let mut maps = vec![None; self.maps.len()];
        for h in self.source.subgroups() {
            let mut inv = vec![0u32; self.table(h).len()];
            for (x, &y) in self.table(h).iter().enumerate() {
                inv[y as usize] = x as u32;
            }
            maps[h.0] = Some(inv);
        }
        Some(TambaraMorphism {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            maps,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.source.subgroups().into_iter().all(|h| {
                self.table(h)
                    .iter()
                    .enumerate()
                    .all(|(x, &y)| x == y as usize)
            })
    }
}

/// One sort per subgroup of the base, with ring operations, res/tr/(nm) and
/// conjugation by generators of the base as unary operations.
fn presentation(t: &TambaraData, with_norms: bool) -> Structure {
    let subs = t.subgroups();
    let sort = |h: SubgroupId| subs.binary_search(&h).expect("subgroup of the base");
    let mut s = Structure::new(subs.iter().map(|&h| t.level(h).size()).collect());
    let flat = |r: &FiniteRing, op: fn(&FiniteRing, usize, usize) -> usize| -> Vec<u32> {
        let mut out = Vec::with_capacity(r.size() * r.size());
        for x in r.elements() {
            for y in r.elements() {
                out.push(op(r, x, y) as u32);
            }
        }
        out
    };
    for (i, &h) in subs.iter().enumerate() {
        let r = t.level(h);
        let add = s.binop(i, flat(r, FiniteRing::add), true);
        s.binop(i, flat(r, FiniteRing::mul), true);
        s.additive[i] = Some(add);
        s.constant(i, r.zero() as u32);
        s.constant(i, r.one() as u32);
    }
    for (k, h) in t.inclusions() {
        if k == h {
            continue;
        }
        s.unop(sort(h), sort(k), t.res_table(k, h).to_vec());
        s.unop(sort(k), sort(h), t.tr_table(k, h).to_vec());
        if with_norms {
            s.unop(sort(k), sort(h), t.nm_table(k, h).to_vec());
        }
    }
    let group = t.group();
    for g in subgroup_generators(group, t.base()) {
        for &h in &subs {
            s.unop(
                sort(h),
                sort(group.conjugate(g, h)),
                t.conj_table(g, h).to_vec(),
            );
        }
    }
    s
}

fn search_morphisms(
    s: &Arc<TambaraData>,
    t: &Arc<TambaraData>,
    config: SearchConfig,
) -> Result<Vec<TambaraMorphism>> {
    if *s.group() != *t.group() || s.base() != t.base() {
        return Err(Error::GroupMismatch(
            "functors over different groups".into(),
        ));
    }
    if s.has_norms() != t.has_norms() {
        return Err(Error::invalid(
            "cannot compare a Green functor with a Tambara functor",
        ));
    }
    let norms = s.has_norms();
    let found = search::homomorphisms(&presentation(s, norms), &presentation(t, norms), config)?;
    let subs = s.subgroups();
    Ok(found
        .into_iter()
        .map(|tables| {
            let mut maps = vec![None; s.nsub()];
            for (i, table) in tables.into_iter().enumerate() {
                maps[subs[i].0] = Some(table);
            }
            TambaraMorphism {
                source: Arc::clone(s),
                target: Arc::clone(t),
                maps,
            }
        })
        .collect())
}

/// Some morphism `s → t`, if one exists.
pub fn functor_homomorphism(
    s: &Arc<TambaraData>,
    t: &Arc<TambaraData>,
    budget: u64,
) -> Result<Option<TambaraMorphism>> {
    let config = SearchConfig {
        budget,
        injective: false,
        mode: Mode::First,
    };
    Ok(search_morphisms(s, t, config)?.into_iter().next())
}

/// An isomorphism `s → t`, if one exists.
pub fn functor_isomorphism(
    s: &Arc<TambaraData>,
    t: &Arc<TambaraData>,
    budget: u64,
) -> Result<Option<TambaraMorphism>> {
    let sizes_match = s
        .subgroups()
        .into_iter()
        .all(|h| s.level(h).size() == t.level(h).size());
    if s.subgroups() != t.subgroups() || !sizes_match {
        if *s.group() != *t.group() || s.base() != t.base() {
            return Err(Error::GroupMismatch(
                "functors over different groups".into(),
            ));
        }
        return Ok(None);
    }
    let config = SearchConfig {
        budget,
        injective: true,
        mode: Mode::First,
    };
    Ok(search_morphisms(s, t, config)?.into_iter().next())
}

/// Every automorphism of `t`, the identity included.
pub fn functor_automorphisms(t: &Arc<TambaraData>, budget: u64) -> Result<Vec<TambaraMorphism>> {
    let config = SearchConfig {
        budget,
        injective: true,
        mode: Mode::All,
    };
    search_morphisms(t, t, config)
}

/// The explicit isomorphism
/// `Res_K Coind_H^G T ≅ ∏_{g ∈ K\G/H} Coind_{K∩gHg⁻¹}^K Res_{K∩gHg⁻¹} (^g T)`
/// for `T` over `H = t.base()`, with the identity double coset first.
pub fn mackey_decomposition_iso(t: &TambaraData, k: SubgroupId) -> Result<TambaraMorphism> {
    let group = t.group();
    let h = t.base();
    let whole = group.whole();
    let (big, layout) = coinduce_with_layout(t, whole)?;
    let lhs = Arc::new(big.restrict(k)?);
    let mut factors = Vec::new();
    let mut layouts = Vec::new();
    for dc in group.double_cosets(k, h) {
        let g = dc.rep;
        let j = group.intersection(k, group.conjugate(g, h));
        let inner = t.transport(g).restrict(j)?;
        let (c, l) = coinduce_with_layout(&inner, k)?;
        factors.push((g, c));
        layouts.push((l, inner));
    }
    let rhs = Arc::new(TambaraData::product(
        &factors.iter().map(|(_, c)| c).collect::<Vec<_>>(),
    )?);
    let mut tables = Vec::new();
    for l in group.subgroups_of(k) {
        let set = layout.sets[l.0].as_ref().expect("level of the coinduction");
        let orbits = set.orbits();
        let lhs_sizes = layout.sizes(t, l);
        let cosets = group.left_cosets(whole, l);
        let mut which = vec![0; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                which[x] = i;
            }
        }
        let factor_sizes: Vec<usize> = factors.iter().map(|(_, c)| c.level(l).size()).collect();
        let component_sizes: Vec<Vec<usize>> = layouts
            .iter()
            .map(|(lay, inner)| lay.sizes(inner, l))
            .collect();
        let table = (0..lhs.level(l).size())
            .map(|x| {
                let v = FiniteRing::product_parts(&lhs_sizes, x);
                let parts: Vec<usize> = factors
                    .iter()
                    .zip(&layouts)
                    .zip(&component_sizes)
                    .map(|(((g, _), (lay, _)), sizes)| {
                        let gi = group.inv(*g);
                        let comps: Vec<usize> = lay.components[l.0]
                            .iter()
                            .map(|&(y, _)| {
                                let z = which[group.mul(gi, y)];
                                let o = orbits.orbit_of[z];
                                t.conj(orbits.transporter[z], orbits.orbits[o].stabilizer, v[o])
                            })
                            .collect();
                        FiniteRing::product_index(sizes, &comps)
                    })
                    .collect();
                FiniteRing::product_index(&factor_sizes, &parts)
            })
            .collect();
        tables.push((l, table));
    }
    TambaraMorphism::new(lhs, rhs, tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{coinduce, fixed_point_functor};
    use crate::groups::FiniteGroup;
    use crate::rings::GRing;
    use crate::search::DEFAULT_BUDGET;

    fn f3_over(g: &Arc<FiniteGroup>, h: SubgroupId) -> TambaraData {
        fixed_point_functor(&GRing::trivial(
            Arc::new(FiniteRing::field(3).unwrap()),
            g,
            h,
        ))
    }

    #[test]
    fn identity_is_found_first_among_automorphisms() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let t = Arc::new(coinduce(&f3_over(&g, g.trivial()), g.whole()).unwrap());
        let autos = functor_automorphisms(&t, DEFAULT_BUDGET).unwrap();
        assert!(autos.iter().any(|a| a.is_identity()));
        for a in &autos {
            a.verify().unwrap();
        }
    }

    #[test]
    fn coinduction_not_iso_to_trivial_action_product() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let f3 = FiniteRing::field(3).unwrap();
        let sq = Arc::new(FiniteRing::product(&[&f3, &f3]).unwrap());
        let a = Arc::new(fixed_point_functor(&GRing::trivial(sq, &g, g.whole())));
        let b = Arc::new(coinduce(&f3_over(&g, g.trivial()), g.whole()).unwrap());
        assert!(functor_isomorphism(&a, &b, DEFAULT_BUDGET)
            .unwrap()
            .is_none());
    }

    #[test]
    fn mackey_iso_in_s3() {
        let g = Arc::new(FiniteGroup::symmetric(3));
        let c2 = SubgroupId(1);
        let t = f3_over(&g, c2);
        let m = mackey_decomposition_iso(&t, c2).unwrap();
        assert!(m.is_iso());
        // C2\S3/C2 has two double cosets
        assert_eq!(g.double_cosets(c2, c2).len(), 2);
    }
}
