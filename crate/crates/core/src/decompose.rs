//! Product decompositions of Tambara functors along bottom idempotents,
//! coinduction detection, Λ-clarification and automorphism diagonalization.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functors::{
    coinduce, coinduce_with_layout, CoindLayout, TambaraBuilder, TambaraData, TambaraMorphism,
};
use crate::groups::{SubgroupId, UpwardClosedSet};
use crate::rings::{decompose_gring, FiniteRing};

/// `T ≅ ∏_H Coind_H^G R_H` with each `R_H` clarified.
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    /// `(H, R_H)` sorted by `H`; at most one `H` per conjugacy class.
    pub factors: Vec<(SubgroupId, TambaraData)>,
    /// `Coind_H^G R_H` for each factor.
    pub coinduced: Vec<Arc<TambaraData>>,
    /// `∏ Coind_H^G R_H`.
    pub reassembled: Arc<TambaraData>,
    /// Isomorphism `reassembled → T`.
    pub witness: TambaraMorphism,
}

fn position_table(members: &[usize], size: usize) -> Vec<usize> {
    let mut pos = vec![usize::MAX; size];
    for (i, &x) in members.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

/// The factor `u(H)·T(H)` for a family `u` of idempotents closed under the
/// structure maps, together with the embeddings of its levels.
fn corner_functor(t: &TambaraData, units: &[usize]) -> Result<(TambaraData, Vec<Vec<usize>>)> {
    let group = t.group();
    let subs = t.subgroups();
    let mut members = vec![Vec::new(); t.group().num_subgroups()];
    let mut pos = vec![Vec::new(); t.group().num_subgroups()];
    let mut b = TambaraBuilder::new(group, t.base(), t.has_norms());
    for &h in &subs {
        let (ring, emb) = t.level(h).corner(units[h.0])?;
        b.level(
            h,
            Arc::new(ring.with_label(format!(
                "{}·{}",
                t.level(h).name(units[h.0]),
                t.level(h).label()
            ))),
        );
        pos[h.0] = position_table(&emb, t.level(h).size());
        members[h.0] = emb;
    }
    let carry =
        |from: SubgroupId, to: SubgroupId, f: &dyn Fn(usize) -> usize| -> Result<Vec<usize>> {
            members[from.0]
                .iter()
                .map(|&x| {
                    let y = pos[to.0][f(x)];
                    if y == usize::MAX {
                        Err(Error::VerificationFailed(format!(
                            "structure map from level {} leaves the factor",
                            group.label(from)
                        )))
                    } else {
                        Ok(y)
                    }
                })
                .collect()
        };
    for (k, h) in t.inclusions() {
        if k == h {
            continue;
        }
        b.res(k, h, carry(h, k, &|x| t.res(k, h, x))?);
        b.tr(k, h, carry(k, h, &|x| t.tr(k, h, x))?);
        if t.has_norms() {
            b.nm(k, h, carry(k, h, &|x| t.nm(k, h, x))?);
        }
    }
    for &g in group.subgroup(t.base()).elements() {
        for &h in &subs {
            b.conj(g, h, carry(h, group.conjugate(g, h), &|x| t.conj(g, h, x))?);
        }
    }
    Ok((b.build()?, members))
}

/// `Nm_e^H(d)` at every level `H`, indexed by subgroup id.
fn norm_units(t: &TambaraData, d: usize) -> Vec<usize> {
    let e = t.group().trivial();
    let mut units = vec![usize::MAX; t.group().num_subgroups()];
    for h in t.subgroups() {
        units[h.0] = t.nm(e, h, d);
    }
    units
}

/// Splits `T` along a complete family of orthogonal fixed bottom idempotents:
/// factor `i` has level `Nm_e^H(d_i)·T(H)`. Returns the factors and the
/// isomorphism `∏ factors → T`.
pub fn split_by_bottom_idempotents(
    t: &TambaraData,
    d: &[usize],
) -> Result<(Vec<TambaraData>, TambaraMorphism)> {
    if !t.has_norms() {
        return Err(Error::NoNorms);
    }
    let group = t.group();
    let e = group.trivial();
    let bottom = t.bottom();
    if d.is_empty() {
        return Err(Error::NotComplete("empty family".into()));
    }
    for (i, &x) in d.iter().enumerate() {
        if x >= bottom.size() || bottom.mul(x, x) != x || x == bottom.zero() {
            return Err(Error::NotIdempotent(x));
        }
        if group
            .subgroup(t.base())
            .elements()
            .iter()
            .any(|&g| t.conj(g, e, x) != x)
        {
            return Err(Error::NotFixed(format!("bottom element {x}")));
        }
        for &y in &d[..i] {
            if bottom.mul(x, y) != bottom.zero() {
                return Err(Error::NotOrthogonal(format!("{x}·{y} != 0")));
            }
        }
    }
    if bottom.sum(d.iter().copied()) != bottom.one() {
        return Err(Error::NotComplete(format!(
            "the sum is {}",
            bottom.sum(d.iter().copied())
        )));
    }
    let units: Vec<Vec<usize>> = d.iter().map(|&x| norm_units(t, x)).collect();
    for h in t.subgroups() {
        let r = t.level(h);
        let us: Vec<usize> = units.iter().map(|u| u[h.0]).collect();
        let orthogonal = us
            .iter()
            .enumerate()
            .all(|(i, &a)| r.mul(a, a) == a && us[..i].iter().all(|&b| r.mul(a, b) == r.zero()));
        if !orthogonal || r.sum(us.iter().copied()) != r.one() {
            return Err(Error::VerificationFailed(format!(
                "norms of the bottom idempotents are not a complete orthogonal family at level {}",
                group.label(h)
            )));
        }
    }
    let mut factors = Vec::new();
    let mut embeddings = Vec::new();
    for u in &units {
        let (f, emb) = corner_functor(t, u)?;
        factors.push(f);
        embeddings.push(emb);
    }
    let product = Arc::new(TambaraData::product(&factors.iter().collect::<Vec<_>>())?);
    let mut tables = Vec::new();
    for h in t.subgroups() {
        let sizes: Vec<usize> = factors.iter().map(|f| f.level(h).size()).collect();
        let r = t.level(h);
        let table = (0..product.level(h).size())
            .map(|x| {
                let parts = FiniteRing::product_parts(&sizes, x);
                r.sum(parts.iter().zip(&embeddings).map(|(&p, emb)| emb[h.0][p]))
            })
            .collect();
        tables.push((h, table));
    }
    let witness = TambaraMorphism::new(product, Arc::new(t.clone()), tables)?;
    if !witness.is_iso() {
        return Err(Error::VerificationFailed(
            "the split is not a product decomposition".into(),
        ));
    }
    Ok((factors, witness))
}

/// Finds the smallest `H` (least subgroup id among those of minimal order)
/// with a type-`H` bottom idempotent whose orbit is a complete orthogonal
/// family, and returns `(H, ℓ, T → Coind_H ℓ)`.
pub fn detect_coinduction(t: &TambaraData) -> Result<(SubgroupId, TambaraData, TambaraMorphism)> {
    if !t.has_norms() {
        return Err(Error::NoNorms);
    }
    if t.is_zero() {
        return Err(Error::ZeroFunctor);
    }
    let group = t.group();
    let base = t.base();
    let bottom_ring = t.bottom_gring();
    let bottom = t.bottom();
    let mut best: Option<(usize, SubgroupId, usize)> = None;
    for report in bottom_ring.idempotent_reports() {
        let Some(h) = report.idempotent_type else {
            continue;
        };
        let d = report.element;
        let orbit: std::collections::BTreeSet<usize> = group
            .subgroup(base)
            .elements()
            .iter()
            .map(|&g| bottom_ring.act(g, d))
            .collect();
        if bottom.sum(orbit.iter().copied()) != bottom.one() {
            continue;
        }
        let key = (group.subgroup(h).order(), h, d);
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    }
    let (_, h, d) = best.expect("the unit is a complete type-G idempotent");
    let t_arc = Arc::new(t.clone());
    if h == base {
        return Ok((base, t.clone(), TambaraMorphism::identity(&t_arc)));
    }
    let res = t.restrict(h)?;
    let rest = bottom.sub(bottom.one(), d);
    let (mut parts, _) = split_by_bottom_idempotents(&res, &[d, rest])?;
    let ell = parts.swap_remove(0);
    let (coind, layout) = coinduce_with_layout(&ell, base)?;
    let tables = unit_map_tables(t, &ell, h, d, &layout)?;
    let witness = TambaraMorphism::new(t_arc, Arc::new(coind), tables)?;
    if !witness.is_iso() {
        return Err(Error::VerificationFailed(
            "the unit map to the coinduction is not bijective".into(),
        ));
    }
    Ok((h, ell, witness))
}

/// Component `(x, P = H ∩ xKx⁻¹)` of the unit map at level `K` sends `v` to
/// `Nm_e^P(d)·Res^{xKx⁻¹}_P c_x(v)`, read inside the corner `ℓ(P)`.
fn unit_map_tables(
    t: &TambaraData,
    ell: &TambaraData,
    h: SubgroupId,
    d: usize,
    layout: &CoindLayout,
) -> Result<Vec<(SubgroupId, Vec<usize>)>> {
    let group = t.group();
    let units = norm_units(t, d);
    let mut corners = vec![Vec::new(); group.num_subgroups()];
    for p in group.subgroups_of(h) {
        let (_, emb) = t.level(p).corner(units[p.0])?;
        corners[p.0] = position_table(&emb, t.level(p).size());
    }
    let mut tables = Vec::new();
    for k in t.subgroups() {
        let sizes = layout.sizes(ell, k);
        let table = t
            .level(k)
            .elements()
            .map(|v| {
                let parts: Vec<usize> = layout.components[k.0]
                    .iter()
                    .map(|&(x, p)| {
                        let xk = group.conjugate(x, k);
                        let y = t.res(p, xk, t.conj(x, k, v));
                        corners[p.0][t.level(p).mul(units[p.0], y)]
                    })
                    .collect();
                FiniteRing::product_index(&sizes, &parts)
            })
            .collect();
        tables.push((k, table));
    }
    Ok(tables)
}

/// Levelwise product of morphisms `∏ sources → ∏ targets`.
fn product_morphism(maps: &[TambaraMorphism]) -> Result<TambaraMorphism> {
    let sources: Vec<&TambaraData> = maps.iter().map(|m| m.source.as_ref()).collect();
    let targets: Vec<&TambaraData> = maps.iter().map(|m| m.target.as_ref()).collect();
    let source = Arc::new(TambaraData::product(&sources)?);
    let target = Arc::new(TambaraData::product(&targets)?);
    let mut tables = Vec::new();
    for h in source.subgroups() {
        let ss: Vec<usize> = sources.iter().map(|s| s.level(h).size()).collect();
        let ts: Vec<usize> = targets.iter().map(|s| s.level(h).size()).collect();
        let table = (0..source.level(h).size())
            .map(|x| {
                let parts: Vec<usize> = FiniteRing::product_parts(&ss, x)
                    .into_iter()
                    .zip(maps)
                    .map(|(p, m)| m.apply(h, p))
                    .collect();
                FiniteRing::product_index(&ts, &parts)
            })
            .collect();
        tables.push((h, table));
    }
    TambaraMorphism::new(source, target, tables)
}

/// `T ≅ ∏_H Coind_H^G R_H` with clarified `R_H`, one `H` per conjugacy class
/// of bottom idempotent types.
pub fn full_decomposition(t: &TambaraData) -> Result<DecompositionResult> {
    if !t.has_norms() {
        return Err(Error::NoNorms);
    }
    if t.is_zero() {
        return Err(Error::ZeroFunctor);
    }
    let dec = decompose_gring(&t.bottom_gring())?;
    let (parts, _) = split_by_bottom_idempotents(t, &dec.class_idempotents)?;
    let mut found = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let (h, ell, _) = detect_coinduction(part)?;
        found.push((h, i, ell));
    }
    found.sort_by_key(|(h, i, _)| (*h, *i));
    let idempotents: Vec<usize> = found
        .iter()
        .map(|&(_, i, _)| dec.class_idempotents[i])
        .collect();
    let (parts, split) = split_by_bottom_idempotents(t, &idempotents)?;
    let mut units = Vec::new();
    let mut factors = Vec::new();
    let mut coinduced = Vec::new();
    for (part, (h, _, _)) in parts.iter().zip(found) {
        let (h2, ell2, unit) = detect_coinduction(part)?;
        debug_assert_eq!(h, h2);
        if !ell2.bottom_gring().is_clarified() {
            return Err(Error::VerificationFailed(format!(
                "factor over {} is not clarified",
                t.group().label(h)
            )));
        }
        coinduced.push(Arc::clone(&unit.target));
        units.push(unit.inverse().expect("unit maps are isomorphisms"));
        factors.push((h2, ell2));
    }
    let back = product_morphism(&units)?;
    let witness = back.then(&split)?;
    witness.verify()?;
    Ok(DecompositionResult {
        factors,
        coinduced,
        reassembled: Arc::clone(&back.source),
        witness,
    })
}

/// `Nm_e^H(e_Λ)·T`, where `e_Λ` sums the bottom class idempotents whose type
/// lies in `lambda`, with the projection `T → clarify(T, Λ)`.
pub fn clarify(
    t: &TambaraData,
    lambda: &UpwardClosedSet,
) -> Result<(TambaraData, TambaraMorphism)> {
    if !t.has_norms() {
        return Err(Error::NoNorms);
    }
    if lambda.base() != t.base() || **lambda.group() != **t.group() {
        return Err(Error::GroupMismatch(
            "family of subgroups over a different group".into(),
        ));
    }
    let source = Arc::new(t.clone());
    if t.is_zero() {
        return Ok((t.clone(), TambaraMorphism::identity(&source)));
    }
    let bottom = t.bottom();
    let dec = decompose_gring(&t.bottom_gring())?;
    let keep = bottom.sum(
        dec.factors
            .iter()
            .zip(&dec.class_idempotents)
            .filter(|((c, _), _)| lambda.contains(*c))
            .map(|(_, &e)| e),
    );
    if keep == bottom.one() {
        return Ok((t.clone(), TambaraMorphism::identity(&source)));
    }
    let units = norm_units(t, keep);
    let (quotient, embeddings) = if keep == bottom.zero() {
        let zero = TambaraData::zero(t.group(), t.base(), true);
        let emb =
            t.subgroups()
                .iter()
                .fold(vec![Vec::new(); t.group().num_subgroups()], |mut acc, h| {
                    acc[h.0] = vec![t.level(*h).zero()];
                    acc
                });
        (zero, emb)
    } else {
        corner_functor(t, &units)?
    };
    let target = Arc::new(quotient.clone());
    let mut tables = Vec::new();
    for h in t.subgroups() {
        let r = t.level(h);
        let pos = position_table(&embeddings[h.0], r.size());
        tables.push((h, r.elements().map(|x| pos[r.mul(units[h.0], x)]).collect()));
    }
    let projection = TambaraMorphism::new(source, target, tables)?;
    Ok((quotient, projection))
}

/// The unique `g: clarify(source, Λ) → target` with `g ∘ projection = f`.
pub fn factor_through_clarification(
    f: &TambaraMorphism,
    lambda: &UpwardClosedSet,
) -> Result<TambaraMorphism> {
    let target = &f.target;
    if !target.is_zero() && !target.bottom_gring().is_lambda_clarified(lambda) {
        return Err(Error::TargetNotClarified);
    }
    let (quotient, projection) = clarify(&f.source, lambda)?;
    let mut tables = Vec::new();
    for h in f.source.subgroups() {
        let mut table = vec![usize::MAX; quotient.level(h).size()];
        for x in f.source.level(h).elements() {
            let q = projection.apply(h, x);
            let y = f.apply(h, x);
            if table[q] == usize::MAX {
                table[q] = y;
            } else if table[q] != y {
                return Err(Error::FactorizationFailed(format!(
                    "elements with the same image in the clarification map to {} and {y} at level {}",
                    table[q],
                    f.source.group().label(h)
                )));
            }
        }
        tables.push((h, table));
    }
    TambaraMorphism::new(Arc::new(quotient), Arc::clone(target), tables)
        .map_err(|e| Error::FactorizationFailed(e.to_string()))
}

/// Writes an automorphism of `∏ Coind_H R_H` as a product of automorphisms
/// of the factors.
pub fn diagonalize_automorphism(
    phi: &TambaraMorphism,
    dec: &DecompositionResult,
) -> Result<Vec<TambaraMorphism>> {
    if *phi.source != *dec.reassembled || *phi.target != *dec.reassembled || !phi.is_iso() {
        return Err(Error::NotAutomorphism(
            "not a bijective endomorphism of the reassembled product".into(),
        ));
    }
    let t = &dec.reassembled;
    let subs = t.subgroups();
    let mut tables: Vec<Vec<(SubgroupId, Vec<usize>)>> = vec![Vec::new(); dec.coinduced.len()];
    for &h in &subs {
        let sizes: Vec<usize> = dec.coinduced.iter().map(|c| c.level(h).size()).collect();
        for (i, c) in dec.coinduced.iter().enumerate() {
            let ring = c.level(h);
            let mut table = Vec::with_capacity(ring.size());
            for x in ring.elements() {
                let mut parts: Vec<usize> =
                    dec.coinduced.iter().map(|c| c.level(h).zero()).collect();
                parts[i] = x;
                let image = FiniteRing::product_parts(
                    &sizes,
                    phi.apply(h, FiniteRing::product_index(&sizes, &parts)),
                );
                for (j, (&y, c)) in image.iter().zip(&dec.coinduced).enumerate() {
                    if j != i && y != c.level(h).zero() {
                        return Err(Error::CrossTermFound(format!(
                            "factor {i} meets factor {j} at level {}",
                            t.group().label(h)
                        )));
                    }
                }
                table.push(image[i]);
            }
            tables[i].push((h, table));
        }
    }
    dec.coinduced
        .iter()
        .zip(tables)
        .map(|(c, table)| {
            let m = TambaraMorphism::new(Arc::clone(c), Arc::clone(c), table)?;
            if m.is_iso() {
                Ok(m)
            } else {
                Err(Error::NotAutomorphism(
                    "a diagonal entry is not bijective".into(),
                ))
            }
        })
        .collect()
}

/// `∏ Coind_H R_H` for explicit factors.
pub fn assemble(factors: &[(SubgroupId, TambaraData)], base: SubgroupId) -> Result<TambaraData> {
    let coinduced: Vec<TambaraData> = factors
        .iter()
        .map(|(_, f)| coinduce(f, base))
        .collect::<Result<_>>()?;
    TambaraData::product(&coinduced.iter().collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{check_axioms, fixed_point_functor, green_counterexample, CheckConfig};
    use crate::groups::{upward_closure, FiniteGroup};
    use crate::rings::GRing;
    use crate::search::DEFAULT_BUDGET;

    fn f3_bottom(g: &Arc<FiniteGroup>) -> TambaraData {
        fixed_point_functor(&GRing::trivial(
            Arc::new(FiniteRing::field(3).unwrap()),
            g,
            g.trivial(),
        ))
    }

    fn galois_f4(g: &Arc<FiniteGroup>) -> TambaraData {
        let f4 = Arc::new(FiniteRing::field(4).unwrap());
        let frob: Vec<usize> = f4.elements().map(|x| f4.mul(x, x)).collect();
        fixed_point_functor(
            &GRing::new(
                Arc::clone(&f4),
                g,
                g.whole(),
                &[f4.elements().collect(), frob],
            )
            .unwrap(),
        )
    }

    #[test]
    fn detects_coinduction_from_e() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let t = coinduce(&f3_bottom(&g), g.whole()).unwrap();
        let (h, ell, w) = detect_coinduction(&t).unwrap();
        assert_eq!(h, g.trivial());
        assert_eq!(ell.bottom().size(), 3);
        assert!(w.is_iso());
    }

    #[test]
    fn detects_coinduction_in_c4() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let c2 = SubgroupId(1);
        let f4 = Arc::new(FiniteRing::field(4).unwrap());
        let frob: Vec<usize> = f4.elements().map(|x| f4.mul(x, x)).collect();
        let r = GRing::new(Arc::clone(&f4), &g, c2, &[f4.elements().collect(), frob]).unwrap();
        let ell = fixed_point_functor(&r);
        let t = coinduce(&ell, g.whole()).unwrap();
        assert!(check_axioms(&t, &CheckConfig::default()).passed());
        let (h, found, _) = detect_coinduction(&t).unwrap();
        assert_eq!(h, c2);
        let iso =
            crate::functors::functor_isomorphism(&Arc::new(ell), &Arc::new(found), DEFAULT_BUDGET)
                .unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn decomposes_a_product() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let a = galois_f4(&g);
        let b = coinduce(&f3_bottom(&g), g.whole()).unwrap();
        let t = TambaraData::product(&[&a, &b]).unwrap();
        let dec = full_decomposition(&t).unwrap();
        let hs: Vec<SubgroupId> = dec.factors.iter().map(|(h, _)| *h).collect();
        assert_eq!(hs, vec![g.trivial(), g.whole()]);
        assert!(dec.witness.is_iso());
        let (c, _) = clarify(&t, &upward_closure(&g, g.whole(), g.whole())).unwrap();
        assert_eq!(c.bottom().size(), 4);
        let autos =
            crate::functors::functor_automorphisms(&dec.reassembled, DEFAULT_BUDGET).unwrap();
        for phi in &autos {
            assert_eq!(diagonalize_automorphism(phi, &dec).unwrap().len(), 2);
        }
    }

    #[test]
    fn clarifying_a_coinduction_gives_zero() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let t = coinduce(&f3_bottom(&g), g.whole()).unwrap();
        let (c, p) = clarify(&t, &upward_closure(&g, g.whole(), g.whole())).unwrap();
        assert!(c.is_zero());
        assert!(p.target.is_zero());
        let (same, id) = clarify(&t, &upward_closure(&g, g.whole(), g.trivial())).unwrap();
        assert_eq!(same, t);
        assert!(id.is_identity());
    }

    #[test]
    fn green_functors_have_no_split() {
        let t = green_counterexample(2, &FiniteRing::field(2).unwrap()).unwrap();
        assert!(matches!(
            split_by_bottom_idempotents(&t, &[t.bottom().one()]),
            Err(Error::NoNorms)
        ));
        assert!(matches!(detect_coinduction(&t), Err(Error::NoNorms)));
    }
}
