//! Fixed-point functors, coinduction and the two-level Green functor that has
//! no product decomposition.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, SubgroupId};
use crate::gsets::{GSet, GSetMap};
use crate::rings::{coinduce_gring, FiniteRing, GRing};

use super::{MapKind, TambaraBuilder, TambaraData};

/// `FP(R)`: level `H` is the fixed subring `R^H`, restriction is inclusion,
/// transfer and norm are sum and product over coset representatives, and
/// conjugation is the action.
pub fn fixed_point_functor(r: &GRing) -> TambaraData {
    let group = r.group();
    let base = r.acting();
    let ring = r.ring();
    let subs = group.subgroups_of(base);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); group.num_subgroups()];
    let mut pos: Vec<Vec<usize>> = vec![Vec::new(); group.num_subgroups()];
    let mut b = TambaraBuilder::new(group, base, true);
    for &h in &subs {
        let fixed = r.fixed_points(h);
        let (sub, _) = ring.subring(&fixed).expect("fixed points form a subring");
        let label = if h == group.trivial() {
            ring.label().to_string()
        } else {
            format!("{}^{}", ring.label(), group.label(h))
        };
        b.level(h, Arc::new(sub.with_label(label)));
        let mut p = vec![usize::MAX; ring.size()];
        for (i, &x) in fixed.iter().enumerate() {
            p[x] = i;
        }
        members[h.0] = fixed;
        pos[h.0] = p;
    }
    for &h in &subs {
        for &k in &subs {
            if !group.is_subgroup(k, h) {
                continue;
            }
            let reps = group.coset_reps(h, k);
            b.res(k, h, members[h.0].iter().map(|&x| pos[k.0][x]).collect());
            b.tr(
                k,
                h,
                members[k.0]
                    .iter()
                    .map(|&x| pos[h.0][ring.sum(reps.iter().map(|&g| r.act(g, x)))])
                    .collect(),
            );
            b.nm(
                k,
                h,
                members[k.0]
                    .iter()
                    .map(|&x| pos[h.0][ring.product_of(reps.iter().map(|&g| r.act(g, x)))])
                    .collect(),
            );
        }
        for &g in group.subgroup(base).elements() {
            let to = group.conjugate(g, h);
            b.conj(
                g,
                h,
                members[h.0]
                    .iter()
                    .map(|&x| pos[to.0][r.act(g, x)])
                    .collect(),
            );
        }
    }
    b.build().expect("fixed-point data is complete")
}

/// Bookkeeping for `Coind_H^K T`: level `L` is `∏ T(H ∩ xLx⁻¹)` over the
/// `H`-orbits of `K/L`.
#[derive(Clone, Debug)]
pub struct CoindLayout {
    pub from: SubgroupId,
    pub to: SubgroupId,
    /// For each `L ⊆ to` (indexed by subgroup id), the `H`-set `res_H(K/L)`.
    pub sets: Vec<Option<Arc<GSet>>>,
    /// For each `L`, the orbits as `(coset representative x, H ∩ xLx⁻¹)`.
    pub components: Vec<Vec<(usize, SubgroupId)>>,
}

impl CoindLayout {
    /// Component sizes of level `l` of the coinduction of `t`.
    pub fn sizes(&self, t: &TambaraData, l: SubgroupId) -> Vec<usize> {
        self.components[l.0]
            .iter()
            .map(|&(_, s)| t.level(s).size())
            .collect()
    }
}

/// `Coind_H^K T` for `T` over `H = t.base()` and `H ⊆ K`.
pub fn coinduce(t: &TambaraData, k: SubgroupId) -> Result<TambaraData> {
    coinduce_with_layout(t, k).map(|(c, _)| c)
}

pub fn coinduce_with_layout(t: &TambaraData, k: SubgroupId) -> Result<(TambaraData, CoindLayout)> {
    let group = t.group();
    let h = t.base();
    if !group.is_subgroup(h, k) {
        return Err(Error::invalid(format!(
            "cannot coinduce from {} to {}: not a subgroup",
            group.label(h),
            group.label(k)
        )));
    }
    let nsub = group.num_subgroups();
    let subs = group.subgroups_of(k);
    let mut sets: Vec<Option<Arc<GSet>>> = vec![None; nsub];
    let mut components = vec![Vec::new(); nsub];
    for &l in &subs {
        let set = Arc::new(GSet::cosets(group, k, l).restrict(h));
        let reps = group.coset_reps(k, l);
        components[l.0] = set
            .orbits()
            .orbits
            .iter()
            .map(|o| (reps[o.base], o.stabilizer))
            .collect();
        sets[l.0] = Some(set);
    }
    let layout = CoindLayout {
        from: h,
        to: k,
        sets,
        components,
    };
    if h == k {
        return Ok((t.clone(), layout));
    }
    let mut b = TambaraBuilder::new(group, k, t.has_norms());
    let mut sizes: Vec<Vec<usize>> = vec![Vec::new(); nsub];
    for &l in &subs {
        sizes[l.0] = layout.sizes(t, l);
        let rings: Vec<&FiniteRing> = layout.components[l.0]
            .iter()
            .map(|&(_, s)| t.level(s).as_ref())
            .collect();
        let ring = FiniteRing::product(&rings)?;
        let label = format!(
            "Coind_{}^{}({})",
            group.label(h),
            group.label(k),
            group.label(l)
        );
        b.level(l, Arc::new(ring.with_label(label)));
    }
    let set = |l: SubgroupId| Arc::clone(layout.sets[l.0].as_ref().unwrap());
    let tabulate =
        |map: &GSetMap, kind: MapKind, from: SubgroupId, to: SubgroupId| -> Result<Vec<usize>> {
            let plan = t.eval_along(map, kind)?;
            let n: usize = sizes[from.0].iter().product();
            Ok((0..n)
                .map(|x| {
                    let v = FiniteRing::product_parts(&sizes[from.0], x);
                    FiniteRing::product_index(&sizes[to.0], &plan.apply(t, &v))
                })
                .collect())
        };
    for &l in &subs {
        for &m in &subs {
            if m == l || !group.is_subgroup(m, l) {
                continue;
            }
            let proj = GSetMap::projection(group, k, m, l);
            let map = GSetMap {
                source: set(m),
                target: set(l),
                images: proj.images,
            };
            b.res(m, l, tabulate(&map, MapKind::Res, l, m)?);
            b.tr(m, l, tabulate(&map, MapKind::Tr, m, l)?);
            if t.has_norms() {
                b.nm(m, l, tabulate(&map, MapKind::Nm, m, l)?);
            }
        }
        // c_g = Res along K/gLg⁻¹ → K/L, x·gLg⁻¹ ↦ xg·L
        let cosets = group.left_cosets(k, l);
        let mut which = vec![usize::MAX; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                which[x] = i;
            }
        }
        for &g in group.subgroup(k).elements() {
            let gl = group.conjugate(g, l);
            let images = group
                .coset_reps(k, gl)
                .into_iter()
                .map(|r| which[group.mul(r, g)])
                .collect();
            let map = GSetMap {
                source: set(gl),
                target: set(l),
                images,
            };
            b.conj(g, l, tabulate(&map, MapKind::Res, l, gl)?);
        }
    }
    Ok((b.build()?, layout))
}

/// The `C_p` Green functor with top `S × S`, bottom `Coind_e^{C_p} S`,
/// transfer `f ↦ (Σ f, 0)` and restriction `(s, t) ↦ (s, …, s)`.
pub fn green_counterexample(p: usize, s: &FiniteRing) -> Result<TambaraData> {
    if p < 2 || (2..p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    green_counterexample_over(&Arc::new(FiniteGroup::cyclic(p)), s)
}

/// [`green_counterexample`] over a given group of prime order.
pub fn green_counterexample_over(group: &Arc<FiniteGroup>, s: &FiniteRing) -> Result<TambaraData> {
    let p = group.order();
    if p < 2 || (2..p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::invalid(format!(
            "the group has order {p}, which is not prime"
        )));
    }
    let group = Arc::clone(group);
    let e = group.trivial();
    let top = group.whole();
    let s = Arc::new(s.clone());
    let bottom = coinduce_gring(&GRing::trivial(Arc::clone(&s), &group, e), top)?;
    let top_ring = Arc::new(FiniteRing::product(&[s.as_ref(), s.as_ref()])?);
    let n = s.size();
    let bottom_sizes = vec![n; p];
    let mut b = TambaraBuilder::new(&group, top, false);
    b.level(e, Arc::clone(bottom.ring()));
    b.level(top, Arc::clone(&top_ring));
    b.res(
        e,
        top,
        top_ring
            .elements()
            .map(|x| FiniteRing::product_index(&bottom_sizes, &vec![x / n; p]))
            .collect(),
    );
    b.tr(
        e,
        top,
        bottom
            .ring()
            .elements()
            .map(|f| s.sum(FiniteRing::product_parts(&bottom_sizes, f)) * n + s.zero())
            .collect(),
    );
    for g in 0..p {
        b.conj(
            g,
            e,
            bottom.ring().elements().map(|x| bottom.act(g, x)).collect(),
        );
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::check_axioms;
    use crate::functors::CheckConfig;

    #[test]
    fn fixed_points_of_galois_f4() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let f4 = Arc::new(FiniteRing::field(4).unwrap());
        let frob: Vec<usize> = f4.elements().map(|x| f4.mul(x, x)).collect();
        let r = GRing::new(
            Arc::clone(&f4),
            &g,
            g.whole(),
            &[f4.elements().collect(), frob],
        )
        .unwrap();
        let t = fixed_point_functor(&r);
        assert_eq!(t.level(g.whole()).size(), 2);
        // norm of a is a·a² = 1
        assert_eq!(t.nm(g.trivial(), g.whole(), 2), 1);
        assert!(check_axioms(&t, &CheckConfig::default()).passed());
    }

    #[test]
    fn coinduction_of_f3() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let f3 = Arc::new(FiniteRing::field(3).unwrap());
        let t = fixed_point_functor(&GRing::trivial(f3, &g, g.trivial()));
        let c = coinduce(&t, g.whole()).unwrap();
        assert_eq!(c.bottom().size(), 9);
        assert_eq!(c.level(g.whole()).size(), 3);
        // restriction is the diagonal
        let diag: Vec<usize> = (0..3).map(|x| c.res(g.trivial(), g.whole(), x)).collect();
        assert_eq!(diag, vec![0, 4, 8]);
        assert!(check_axioms(&c, &CheckConfig::default()).passed());
    }

    #[test]
    fn green_example_shape() {
        let t = green_counterexample(2, &FiniteRing::field(2).unwrap()).unwrap();
        let g = t.group().clone();
        assert_eq!(t.level(g.whole()).size(), 4);
        assert_eq!(t.bottom().size(), 4);
        assert!(!t.has_norms());
        assert!(check_axioms(&t, &CheckConfig::default()).passed());
        // the right factor of the top restricts to zero
        assert_eq!(t.res(g.trivial(), g.whole(), 1), 0);
    }
}
