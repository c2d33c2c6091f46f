//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use tambara_core::decompose::{
    assemble, clarify, detect_coinduction, factor_through_clarification, full_decomposition,
};
use tambara_core::functors::{
    burnside_mod, check_axioms, check_norm_additivity_up_to_transfers,
    check_orthogonal_idempotent_norms, check_transfer_ideal_contains_one, coinduce,
    fixed_point_functor, functor_homomorphism, functor_isomorphism, green_counterexample,
    mackey_decomposition_iso, AxiomFamily, CheckConfig, Status, TambaraData, TambaraMorphism,
};
use tambara_core::groups::upward_closure;
use tambara_core::io;
use tambara_core::rings::decompose_gring;
use tambara_core::search::DEFAULT_BUDGET;
use tambara_core::{Error, FiniteGroup, FiniteRing, SubgroupId, UpwardClosedSet};

type Outcome = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn iso_exists(a: &TambaraData, b: &TambaraData) -> Result<bool, String> {
    let found = functor_isomorphism(&Arc::new(a.clone()), &Arc::new(b.clone()), DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?;
    match found {
        Some(m) => check_isomorphism(&m).map(|_| true),
        None => Ok(false),
    }
}

/// Whether `(H, ℓ)` and `(H', ℓ')` agree up to conjugation: `ℓ' ≅ ᵍℓ` for
/// some `g` with `gHg⁻¹ = H'`. Any such `g` may be needed, since
/// `Coind_H ℓ ≅ Coind_H ⁿℓ` for `n` normalizing `H`.
fn conjugate_pair(l: &TambaraData, h2: SubgroupId, l2: &TambaraData) -> Result<bool, String> {
    let g = l.group();
    for c in 0..g.order() {
        if g.conjugate(c, l.base()) == h2 && iso_exists(&l.transport(c), l2)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn criterion_1() -> Outcome {
    let config = CheckConfig::default();
    let grings = gring_corpus().len();
    if grings < 10 {
        return Err(format!("only {grings} G-rings in the corpus"));
    }
    let corpus = functor_corpus();
    for e in &corpus {
        let report = check_axioms(&e.functor, &config);
        if let Some(f) = report.first_failure() {
            return Err(format!(
                "{} fails {}: {}",
                e.name,
                f.family,
                f.witness.as_deref().unwrap_or("")
            ));
        }
    }
    let mutations = [
        (AxiomFamily::StructureMaps, "mut_structure_res_not_hom.json"),
        (
            AxiomFamily::Conjugation,
            "mut_conjugation_top_frobenius.json",
        ),
        (
            AxiomFamily::TransferDoubleCoset,
            "mut_transfer_swap_removed.json",
        ),
        (AxiomFamily::NormDoubleCoset, "mut_norm_identity.json"),
        (AxiomFamily::Frobenius, "mut_frobenius_green.json"),
        (
            AxiomFamily::Exponential,
            "mut_exponential_burnside_norm.json",
        ),
    ];
    for (family, file) in mutations {
        let t = io::parse_functor(&fs::read_to_string(fixture(file)).unwrap())
            .map_err(|e| e.to_string())?;
        let report = check_axioms(&t, &config);
        let r = report.family(family);
        match (&r.status, &r.witness) {
            (Status::Fail, Some(w)) if !w.is_empty() => println!("      {file}: {family}: {w}"),
            _ => return Err(format!("{file} does not fail {family}")),
        }
    }
    Ok(format!(
        "{} constructor outputs over {grings} G-rings pass; 6/6 mutation fixtures fail their family",
        corpus.len()
    ))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for p in [2i64, 3] {
        let n = (p * p) as usize;
        let g = Arc::new(FiniteGroup::cyclic(p as usize));
        let (e, top) = (g.trivial(), g.whole());
        let b = burnside_mod(&g, n).map_err(|e| e.to_string())?;
        let basis = b.basis(top);
        let xi = basis
            .iter()
            .position(|&m| m == e)
            .ok_or("no free orbit in the top basis")?;
        let ui = basis
            .iter()
            .position(|&m| m == top)
            .ok_or("no unit in the top basis")?;
        let top_elem = |unit: i64, x: i64| {
            let mut c = vec![0; basis.len()];
            c[ui] = unit;
            c[xi] = x;
            b.element(top, &c)
        };
        for a in 0..n as i64 {
            let expected = top_elem(a, (a.pow(p as u32) - a) / p);
            let got = b.data.nm(e, top, b.integer(e, a));
            if got != expected {
                let r = b.data.level(top);
                return Err(format!(
                    "C{p} mod {n}: nm({a}) = {} but a + ((a^p - a)/p)x = {}",
                    r.name(got),
                    r.name(expected)
                ));
            }
            checked += 1;
        }
        let x = top_elem(0, 1);
        if b.data.res(e, top, x) != b.integer(e, p) {
            return Err(format!("C{p} mod {n}: res(x) != {p}"));
        }
        if b.data.tr(e, top, b.integer(e, 1)) != x {
            return Err(format!("C{p} mod {n}: tr(1) != x"));
        }
    }
    Ok(format!(
        "{checked} norms, res(x) = p and tr(1) = x for p = 2, 3 with N = p^2"
    ))
}

/// Functors over `h` for the Mackey check, bounded so the coinduction stays small.
fn h_corpus(g: &Arc<FiniteGroup>, h: SubgroupId) -> Vec<(String, TambaraData)> {
    let index = g.order() / g.subgroup(h).order();
    let mut out = vec![
        ("FP(F2)".to_string(), fp_over("F2", g, h)),
        ("FP(F3)".to_string(), fp_over("F3", g, h)),
    ];
    for (name, r) in gring_corpus() {
        if **r.group() != **g {
            continue;
        }
        let t = fixed_point_functor(&r).restrict(h).unwrap();
        out.push((format!("Res FP({name})"), t));
    }
    out.retain(|(_, t)| (t.bottom().size() as f64).powi(index as i32) <= 729.0);
    out
}

fn criterion_3() -> Outcome {
    let mut isos = 0;
    for name in ["C4", "V4", "S3"] {
        let g = group(name);
        for h in g.subgroup_ids() {
            for (tname, t) in h_corpus(&g, h) {
                for k in g.subgroup_ids() {
                    let m = mackey_decomposition_iso(&t, k).map_err(|e| {
                        format!(
                            "{name}, K = {}, {tname} over {}: {e}",
                            g.label(k),
                            g.label(h)
                        )
                    })?;
                    check_isomorphism(&m).map_err(|e| {
                        format!(
                            "{name}, K = {}, {tname} over {}: {e}",
                            g.label(k),
                            g.label(h)
                        )
                    })?;
                    isos += 1;
                }
            }
        }
    }
    Ok(format!(
        "{isos} isomorphisms over C4, V4, S3 verified element by element"
    ))
}

/// Additive closure of `gens` inside the ring.
fn additive_span(r: &FiniteRing, gens: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; r.size()];
    inside[r.zero()] = true;
    let mut stack = vec![r.zero()];
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = r.add(x, g);
            if !inside[y] {
                inside[y] = true;
                stack.push(y);
            }
        }
    }
    inside
}

fn proper_transfer_images(t: &TambaraData, l: SubgroupId) -> Vec<usize> {
    let g = t.group();
    let mut gens = Vec::new();
    for k in g.subgroups_of(l) {
        if k != l {
            gens.extend(t.level(k).elements().map(|x| t.tr(k, l, x)));
        }
    }
    gens
}

fn criterion_4() -> Outcome {
    let (mut a_checks, mut b_checks, mut c_checks) = (0u64, 0u64, 0u64);
    for e in functor_corpus() {
        let t = &e.functor;
        if !t.has_norms() {
            continue;
        }
        let g = t.group();
        // (a) against an independently computed span
        for l in t.subgroups() {
            let span = additive_span(t.level(l), &proper_transfer_images(t, l));
            let rl = t.level(l);
            for k in g.subgroups_of(l) {
                if k == l {
                    continue;
                }
                let rk = t.level(k);
                for x in rk.elements() {
                    for y in rk.elements() {
                        let d = rl.sub(
                            rl.sub(t.nm(k, l, rk.add(x, y)), t.nm(k, l, x)),
                            t.nm(k, l, y),
                        );
                        if !span[d] {
                            return Err(format!(
                                "{}: Nm({x}+{y}) defect {d} outside the transfer span",
                                e.name
                            ));
                        }
                        a_checks += 1;
                    }
                }
            }
        }
        check_norm_additivity_up_to_transfers(t).map_err(|err| format!("{}: {err}", e.name))?;
        // (b)
        let bottom = t.bottom();
        let e0 = g.trivial();
        let base_elems = g.subgroup(t.base()).elements();
        let fixed: Vec<usize> = bottom
            .elements()
            .filter(|&x| bottom.mul(x, x) == x && base_elems.iter().all(|&c| t.conj(c, e0, x) == x))
            .collect();
        for &x in &fixed {
            for &y in &fixed {
                if bottom.mul(x, y) != bottom.zero() {
                    continue;
                }
                for h in t.subgroups() {
                    let rh = t.level(h);
                    if t.nm(e0, h, bottom.add(x, y)) != rh.add(t.nm(e0, h, x), t.nm(e0, h, y)) {
                        return Err(format!(
                            "{}: norm of orthogonal idempotents {x}, {y} not additive",
                            e.name
                        ));
                    }
                    b_checks += 1;
                }
            }
        }
        check_orthogonal_idempotent_norms(t).map_err(|err| format!("{}: {err}", e.name))?;
        // (c)
        if let Some((h, _)) = &e.coinduced_from {
            for l in t.subgroups() {
                if g.is_subconjugate_in(t.base(), l, *h) {
                    continue;
                }
                let rl = t.level(l);
                let gens = proper_transfer_images(t, l);
                let ideal_gens: Vec<usize> = gens
                    .iter()
                    .flat_map(|&x| rl.elements().map(move |r| (x, r)))
                    .map(|(x, r)| rl.mul(x, r))
                    .collect();
                if !additive_span(rl, &ideal_gens)[rl.one()] {
                    return Err(format!(
                        "{}: proper transfers into {} miss 1",
                        e.name,
                        g.label(l)
                    ));
                }
                c_checks += 1;
            }
            check_transfer_ideal_contains_one(t, *h).map_err(|err| format!("{}: {err}", e.name))?;
        }
    }
    Ok(format!(
        "(a) {a_checks} sums, (b) {b_checks} idempotent pairs, (c) {c_checks} levels; no failures"
    ))
}

/// Clarified factors over `h`.
fn factor_pool(g: &Arc<FiniteGroup>, h: SubgroupId) -> Vec<TambaraData> {
    let mut out: Vec<TambaraData> = ["F2", "F3", "F4", "Z/4"]
        .iter()
        .map(|r| fp_over(r, g, h))
        .collect();
    for n in index_two(g, h) {
        out.push(fixed_point_functor(&frobenius_through("F4", g, h, n)));
    }
    out
}

fn criterion_5() -> Outcome {
    let groups = [
        "C2", "C3", "C4", "V4", "C5", "S3", "C6", "C7", "C8", "D8", "Q8", "C2xC4", "C2^3",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a3b_a2a0);
    let mut done = 0;
    let mut factor_count = 0;
    let mut attempts = 0;
    while done < 60 {
        attempts += 1;
        if attempts > 2000 {
            return Err(format!("only {done} assemblies fit the size limits"));
        }
        let g = group(groups.choose(&mut rng).unwrap());
        let whole = g.whole();
        let mut classes: Vec<SubgroupId> = g
            .subgroup_ids()
            .filter(|&h| g.class_rep_in(whole, h) == h)
            .collect();
        classes.shuffle(&mut rng);
        let count = rng.gen_range(1..=classes.len().min(3));
        let mut factors = Vec::new();
        let mut bottom = 1f64;
        for &c in &classes[..count] {
            let conjugates: Vec<SubgroupId> = g
                .subgroup_ids()
                .filter(|&h| g.are_conjugate_in(whole, h, c))
                .collect();
            let h = *conjugates.choose(&mut rng).unwrap();
            let pool = factor_pool(&g, h);
            let f = pool.choose(&mut rng).unwrap().clone();
            bottom *= (f.bottom().size() as f64).powi((g.order() / g.subgroup(h).order()) as i32);
            factors.push((h, f));
        }
        if bottom > 1024.0 {
            continue;
        }
        let t = match assemble(&factors, whole) {
            Ok(t) => t,
            Err(Error::Unsupported(_)) => continue,
            Err(e) => return Err(format!("assembly over {}: {e}", g.name())),
        };
        let dec = full_decomposition(&t).map_err(|e| format!("{}: {e}", g.name()))?;
        check_isomorphism(&dec.witness).map_err(|e| format!("{}: witness: {e}", g.name()))?;
        if dec.factors.len() != factors.len() {
            return Err(format!(
                "{}: assembled {} factors, recovered {}",
                g.name(),
                factors.len(),
                dec.factors.len()
            ));
        }
        let mut used = vec![false; dec.factors.len()];
        for (h, f) in &factors {
            let mut matched = false;
            for (i, (h2, f2)) in dec.factors.iter().enumerate() {
                if used[i] || !g.are_conjugate_in(whole, *h, *h2) {
                    continue;
                }
                if conjugate_pair(f, *h2, f2)? {
                    used[i] = true;
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Err(format!(
                    "{}: factor over {} not recovered",
                    g.name(),
                    g.label(*h)
                ));
            }
        }
        done += 1;
        factor_count += factors.len();
    }
    Ok(format!(
        "{done} seeded assemblies with {factor_count} factors recovered; witnesses verified"
    ))
}

/// Coinductions of clarified functors over several groups.
fn detection_corpus() -> Vec<(String, TambaraData, SubgroupId, TambaraData)> {
    let mut out = Vec::new();
    for e in coinduction_corpus() {
        if let Some((h, l)) = e.coinduced_from {
            if l.bottom_gring().is_clarified() {
                out.push((e.name, e.functor, h, l));
            }
        }
    }
    for name in ["C2", "C3", "C4", "V4", "S3", "C6", "D8", "Q8"] {
        let g = group(name);
        for h in g.subgroup_ids() {
            let index = g.order() / g.subgroup(h).order();
            for l in factor_pool(&g, h) {
                if (l.bottom().size() as f64).powi(index as i32) > 256.0 {
                    continue;
                }
                let t = coinduce(&l, g.whole()).unwrap();
                out.push((format!("Coind_{}^{name}", g.label(h)), t, h, l));
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let corpus = detection_corpus();
    for (name, t, h, l) in &corpus {
        let g = t.group();
        let (h2, l2, map) = detect_coinduction(t).map_err(|e| format!("{name}: {e}"))?;
        if !g.are_conjugate_in(g.whole(), *h, h2) {
            return Err(format!(
                "{name}: detected {} instead of {}",
                g.label(h2),
                g.label(*h)
            ));
        }
        check_isomorphism(&map).map_err(|e| format!("{name}: {e}"))?;
        if !conjugate_pair(l, h2, &l2)? {
            return Err(format!(
                "{name}: detected factor is not conjugate to the original"
            ));
        }
    }
    Ok(format!(
        "{} coinductions detected with conjugate, isomorphic factors",
        corpus.len()
    ))
}

fn injective(table: &[u32]) -> bool {
    let mut seen = std::collections::HashSet::new();
    table.iter().all(|x| seen.insert(*x))
}

fn criterion_7() -> Outcome {
    let config = CheckConfig::default();
    let mut cases = 0;
    for p in [2usize, 3] {
        for s in ["F2", "F3", "F4"] {
            let sr = ring(s);
            let t = green_counterexample(p, &sr).map_err(|e| e.to_string())?;
            let g = t.group();
            let (e, top) = (g.trivial(), g.whole());
            let report = check_axioms(&t, &config);
            if !report.passed() || report.family(AxiomFamily::Frobenius).status != Status::Pass {
                return Err(format!("C{p}, {s}: Green axioms fail"));
            }
            let dec = decompose_gring(&t.bottom_gring()).map_err(|e| e.to_string())?;
            if dec.factors.len() != 1 || dec.factors[0].0 != e {
                return Err(format!(
                    "C{p}, {s}: bottom ring not detected as coinduced from e"
                ));
            }
            if !matches!(detect_coinduction(&t), Err(Error::NoNorms)) {
                return Err(format!("C{p}, {s}: detection did not report NoNorms"));
            }
            if injective(t.res_table(e, top)) {
                return Err(format!("C{p}, {s}: restriction is injective"));
            }
            let coind = coinduce(&fp_over(s, g, e), top).unwrap().forget_norms();
            if !injective(coind.res_table(e, top)) {
                return Err(format!("C{p}, {s}: Coind_e restriction is not injective"));
            }
            if iso_exists(&t, &coind)? {
                return Err(format!("C{p}, {s}: found a Green isomorphism to Coind_e"));
            }
            cases += 1;
        }
    }
    let mut corpus_coinds = 0;
    for e in coinduction_corpus() {
        let Some((h, _)) = &e.coinduced_from else {
            continue;
        };
        if *h != e.functor.group().trivial() {
            continue;
        }
        let t = e.functor.forget_norms();
        for (k, l) in t.inclusions() {
            if k != l && !injective(t.res_table(k, l)) {
                return Err(format!(
                    "{}: restriction {k:?} <- {l:?} not injective",
                    e.name
                ));
            }
        }
        corpus_coinds += 1;
    }
    Ok(format!(
        "{cases} Green examples pass, bottoms coinduced from e, NoNorms, res non-injective; {corpus_coinds} corpus Coind_e have injective res"
    ))
}

/// Every nonempty upward closed family over the whole group.
fn families(g: &Arc<FiniteGroup>) -> Vec<UpwardClosedSet> {
    let whole = g.whole();
    let reps: Vec<SubgroupId> = g
        .subgroup_ids()
        .filter(|&h| g.class_rep_in(whole, h) == h)
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << reps.len()) {
        let members: Vec<SubgroupId> = g
            .subgroup_ids()
            .filter(|&h| {
                reps.iter()
                    .enumerate()
                    .any(|(i, &r)| mask >> i & 1 == 1 && g.are_conjugate_in(whole, h, r))
            })
            .collect();
        if let Ok(set) = UpwardClosedSet::from_members(g, whole, &members) {
            out.push(set);
        }
    }
    out
}

fn compose_equals(f: &TambaraMorphism, first: &TambaraMorphism, then: &TambaraMorphism) -> bool {
    f.source.subgroups().into_iter().all(|h| {
        f.source
            .level(h)
            .elements()
            .all(|x| then.apply(h, first.apply(h, x)) == f.apply(h, x))
    })
}

fn surjective(m: &TambaraMorphism) -> bool {
    m.target.subgroups().into_iter().all(|h| {
        let mut hit = vec![false; m.target.level(h).size()];
        for x in m.source.level(h).elements() {
            hit[m.apply(h, x)] = true;
        }
        !hit.contains(&false)
    })
}

fn is_clarified_for(t: &TambaraData, lambda: &UpwardClosedSet) -> bool {
    t.is_zero() || t.bottom_gring().is_lambda_clarified(lambda)
}

fn factors_through(f: &TambaraMorphism, lambda: &UpwardClosedSet) -> Result<(), String> {
    let (_, p) = clarify(&f.source, lambda).map_err(|e| e.to_string())?;
    let g = factor_through_clarification(f, lambda).map_err(|e| e.to_string())?;
    check_morphism(&g)?;
    if !compose_equals(f, &p, &g) {
        return Err("factorization does not compose to the original map".into());
    }
    if !surjective(&p) {
        return Err("projection is not surjective, so the factorization need not be unique".into());
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let corpus: Vec<Entry> = functor_corpus()
        .into_iter()
        .filter(|e| e.functor.has_norms() && e.functor.base() == e.functor.group().whole())
        .filter(|e| e.functor.bottom().size() <= 256)
        .collect();
    let (mut idem, mut mono, mut maps) = (0, 0, 0);
    for e in &corpus {
        let s = &e.functor;
        let fams = families(s.group());
        let mut clar = Vec::new();
        for lambda in &fams {
            let (q, p) = clarify(s, lambda).map_err(|err| format!("{}: {err}", e.name))?;
            check_morphism(&p).map_err(|err| format!("{}: {err}", e.name))?;
            if !is_clarified_for(&q, lambda) || !surjective(&p) {
                return Err(format!(
                    "{}: clarification is not a clarified quotient",
                    e.name
                ));
            }
            let (qq, pp) = clarify(&q, lambda).map_err(|err| err.to_string())?;
            if qq != q || !pp.is_identity() {
                return Err(format!("{}: clarification is not idempotent", e.name));
            }
            idem += 1;
            clar.push((q, p));
        }
        for (i, small) in fams.iter().enumerate() {
            for (j, big) in fams.iter().enumerate() {
                if !small.is_subset_of(big) {
                    continue;
                }
                // Λ ⊆ Λ': clarifying at Λ' first changes nothing afterwards, and
                // the Λ-clarification is already Λ'-clarified.
                let (twice, _) = clarify(&clar[j].0, small).map_err(|err| err.to_string())?;
                if !iso_exists(&twice, &clar[i].0)? {
                    return Err(format!(
                        "{}: clarify(clarify(T, big), small) differs from clarify(T, small)",
                        e.name
                    ));
                }
                let (again, p) = clarify(&clar[i].0, big).map_err(|err| err.to_string())?;
                if again != clar[i].0 || !p.is_identity() {
                    return Err(format!(
                        "{}: a small clarification is changed by a bigger family",
                        e.name
                    ));
                }
                // the projection onto the Λ-part is a map into a Λ'-clarified target
                factors_through(&clar[i].1, big).map_err(|err| format!("{}: {err}", e.name))?;
                mono += 1;
                maps += 1;
            }
        }
    }
    // searched morphisms between corpus functors into clarified targets
    let small: Vec<&Entry> = corpus
        .iter()
        .filter(|e| e.functor.bottom().size() <= 16)
        .collect();
    for a in &small {
        for b in &small {
            let (s, t) = (&a.functor, &b.functor);
            if **s.group() != **t.group() {
                continue;
            }
            let f =
                functor_homomorphism(&Arc::new(s.clone()), &Arc::new(t.clone()), DEFAULT_BUDGET)
                    .map_err(|err| format!("{} -> {}: {err}", a.name, b.name))?;
            let Some(f) = f else { continue };
            check_morphism(&f)?;
            for lambda in families(t.group()) {
                if is_clarified_for(t, &lambda) {
                    factors_through(&f, &lambda)
                        .map_err(|err| format!("{} -> {}: {err}", a.name, b.name))?;
                    maps += 1;
                }
            }
        }
    }
    let mut zero = 0;
    for (gname, fields) in [("C2", ["F2", "F3", "F4"]), ("C3", ["F2", "F3", "F4"])] {
        let g = group(gname);
        for r in fields {
            let t = coinduce(&fp_over(r, &g, g.trivial()), g.whole()).unwrap();
            let (q, _) = clarify(&t, &upward_closure(&g, g.whole(), g.whole()))
                .map_err(|e| e.to_string())?;
            if !q.is_zero() {
                return Err(format!("clarify(Coind_e^{gname} {r}, Λ_G) is not zero"));
            }
            zero += 1;
        }
    }
    Ok(format!(
        "{idem} idempotence, {mono} monotonicity and {maps} factorization checks; {zero} coinduced fields clarify to zero"
    ))
}

fn run_cli(dir: &Path, args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_tambara"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())
}

/// Runs every writing command in a fresh directory and returns the files written.
fn emit_artifacts() -> Result<(tempfile::TempDir, BTreeMap<String, Vec<u8>>), String> {
    let inputs = [
        "fp_f4_c2.json",
        "coind_e_c2_f3.json",
        "fp_f3_trivial.json",
        "fp_f3xf3_trivial.json",
        "burnside_c2_mod4.json",
        "fp_f2_s3.json",
    ];
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for f in inputs {
        fs::copy(fixture(f), dir.path().join(f)).map_err(|e| e.to_string())?;
    }
    let mut commands: Vec<Vec<String>> = Vec::new();
    for f in inputs {
        let stem = f.trim_end_matches(".json");
        commands.push(vec!["decompose".into(), f.into()]);
        for lambda in ["all", "G"] {
            commands.push(vec![
                "decompose".into(),
                f.into(),
                format!("--lambda={lambda}"),
                format!("--out={stem}.clarified_{lambda}.json"),
            ]);
        }
        commands.push(vec![
            "coinduce".into(),
            f.into(),
            "--from".into(),
            "e".into(),
        ]);
        commands.push(vec!["restrict".into(), f.into(), "--to".into(), "e".into()]);
    }
    commands.push(vec![
        "coinduce".into(),
        "fp_f2_s3.json".into(),
        "--from".into(),
        "C2.0".into(),
        "--out=s3_from_c2.json".into(),
    ]);
    commands.push(vec![
        "restrict".into(),
        "fp_f2_s3.json".into(),
        "--to".into(),
        "C3".into(),
        "--out=s3_to_c3.json".into(),
    ]);
    for c in &commands {
        let args: Vec<&str> = c.iter().map(String::as_str).collect();
        let o = run_cli(dir.path(), &args)?;
        if !o.status.success() {
            return Err(format!(
                "{}: {}",
                c.join(" "),
                String::from_utf8_lossy(&o.stderr)
            ));
        }
    }
    let mut files = BTreeMap::new();
    for entry in fs::read_dir(dir.path()).map_err(|e| e.to_string())? {
        let entry = entry.map_err(|e| e.to_string())?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if !inputs.contains(&name.as_str()) {
            files.insert(name, fs::read(entry.path()).map_err(|e| e.to_string())?);
        }
    }
    Ok((dir, files))
}

fn criterion_9() -> Outcome {
    let (dir, first) = emit_artifacts()?;
    let (_, second) = emit_artifacts()?;
    if first.keys().ne(second.keys()) {
        return Err("the two runs wrote different file sets".into());
    }
    for (name, bytes) in &first {
        if second[name] != *bytes {
            return Err(format!("{name} differs between runs"));
        }
        let o = run_cli(dir.path(), &["check", name])?;
        if o.status.code() != Some(0) {
            return Err(format!(
                "{name} fails check: {}",
                String::from_utf8_lossy(&o.stderr)
            ));
        }
        let text = String::from_utf8(bytes.clone()).map_err(|e| e.to_string())?;
        let doc = io::parse_document(&text).map_err(|e| format!("{name}: {e}"))?;
        let t = io::parse_functor(&text).map_err(|e| format!("{name}: {e}"))?;
        let again = serde_json::to_value(io::functor_def(&t)).unwrap();
        if again != serde_json::to_value(&doc.functor).unwrap() {
            return Err(format!("{name} does not re-serialize to the same functor"));
        }
    }
    Ok(format!(
        "{} artifacts byte-identical across two runs, re-ingested and checked",
        first.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("axiom soundness", criterion_1),
        ("Burnside Lewis diagram", criterion_2),
        ("Mackey decomposition lemma", criterion_3),
        ("norm lemmas", criterion_4),
        ("decomposition round-trip", criterion_5),
        ("coinduction detection", criterion_6),
        ("Green counterexample", criterion_7),
        ("clarification as localization", criterion_8),
        ("serialization closure", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {}. {name} [exact, {secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}. {name} [exact, {secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
