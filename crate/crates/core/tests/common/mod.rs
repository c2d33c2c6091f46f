//! Shared corpus of groups, G-rings and functors, and an independent
//! morphism checker, for the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use tambara_core::functors::{
    burnside_mod, coinduce, fixed_point_functor, TambaraData, TambaraMorphism,
};
use tambara_core::rings::coinduce_gring;
use tambara_core::{FiniteGroup, FiniteRing, GRing, SubgroupId};

pub fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(match name {
        "C2" => FiniteGroup::cyclic(2),
        "C3" => FiniteGroup::cyclic(3),
        "C4" => FiniteGroup::cyclic(4),
        "C5" => FiniteGroup::cyclic(5),
        "C6" => FiniteGroup::cyclic(6),
        "C7" => FiniteGroup::cyclic(7),
        "C8" => FiniteGroup::cyclic(8),
        "V4" => FiniteGroup::klein(),
        "S3" => FiniteGroup::symmetric(3),
        "D8" => FiniteGroup::dihedral(4),
        "Q8" => FiniteGroup::quaternion(),
        "C2xC4" => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)),
        "C2^3" => FiniteGroup::direct_product(&FiniteGroup::klein(), &FiniteGroup::cyclic(2)),
        _ => panic!("unknown group {name}"),
    })
}

pub fn ring(name: &str) -> Arc<FiniteRing> {
    Arc::new(match name {
        "F2" => FiniteRing::field(2).unwrap(),
        "F3" => FiniteRing::field(3).unwrap(),
        "F4" => FiniteRing::field(4).unwrap(),
        "F8" => FiniteRing::field(8).unwrap(),
        "Z/4" => FiniteRing::zn(4).unwrap(),
        "F2xF2" => {
            let f2 = FiniteRing::field(2).unwrap();
            FiniteRing::product(&[&f2, &f2]).unwrap()
        }
        _ => panic!("unknown ring {name}"),
    })
}

pub fn frobenius(r: &FiniteRing, x: usize) -> usize {
    let p = r.characteristic();
    (1..p).fold(x, |acc, _| r.mul(acc, x))
}

/// Subgroups of index 2 in `h`.
pub fn index_two(g: &FiniteGroup, h: SubgroupId) -> Vec<SubgroupId> {
    g.subgroups_of(h)
        .into_iter()
        .filter(|&n| 2 * g.subgroup(n).order() == g.subgroup(h).order())
        .collect()
}

/// `r` with `h` acting trivially.
pub fn trivial(r: &str, g: &Arc<FiniteGroup>, h: SubgroupId) -> GRing {
    GRing::trivial(ring(r), g, h)
}

/// `r` with `h` acting through `h/n ≅ C2` by the Frobenius, for `n` of index 2.
pub fn frobenius_through(r: &str, g: &Arc<FiniteGroup>, h: SubgroupId, n: SubgroupId) -> GRing {
    let ring = ring(r);
    let rr = Arc::clone(&ring);
    let inside = g.subgroup(n).clone();
    GRing::from_action(ring, g, h, move |x, v| {
        if inside.contains(x) {
            v
        } else {
            frobenius(&rr, v)
        }
    })
    .unwrap()
}

/// At least ten G-rings over several groups.
pub fn gring_corpus() -> Vec<(String, GRing)> {
    let mut out = Vec::new();
    let mut push = |name: String, r: GRing| out.push((name, r));
    let c2 = group("C2");
    let (e2, g2) = (c2.trivial(), c2.whole());
    push("F2 on C2".into(), trivial("F2", &c2, g2));
    push("F3 on C2".into(), trivial("F3", &c2, g2));
    push("Z/4 on C2".into(), trivial("Z/4", &c2, g2));
    push(
        "F4 Galois on C2".into(),
        frobenius_through("F4", &c2, g2, e2),
    );
    let swap = ring("F2xF2");
    push(
        "F2xF2 swap on C2".into(),
        GRing::from_action(Arc::clone(&swap), &c2, g2, |g, x| {
            if g == 0 {
                x
            } else {
                2 * (x % 2) + x / 2
            }
        })
        .unwrap(),
    );
    let c3 = group("C3");
    push("F2 on C3".into(), trivial("F2", &c3, c3.whole()));
    let f8 = ring("F8");
    let f8c = Arc::clone(&f8);
    push(
        "F8 Frobenius on C3".into(),
        GRing::from_action(f8, &c3, c3.whole(), move |g, x| {
            (0..g).fold(x, |v, _| frobenius(&f8c, v))
        })
        .unwrap(),
    );
    push(
        "F3^3 cyclic on C3".into(),
        coinduce_gring(&trivial("F3", &c3, c3.trivial()), c3.whole()).unwrap(),
    );
    let c4 = group("C4");
    push("F2 on C4".into(), trivial("F2", &c4, c4.whole()));
    let c2_in_c4 = c4.resolve("C2").unwrap();
    push(
        "F4 through C4/C2".into(),
        frobenius_through("F4", &c4, c4.whole(), c2_in_c4),
    );
    let v4 = group("V4");
    push("F2 on V4".into(), trivial("F2", &v4, v4.whole()));
    let k = v4.resolve("C2.0").unwrap();
    push(
        "F4 through V4/C2.0".into(),
        frobenius_through("F4", &v4, v4.whole(), k),
    );
    let s3 = group("S3");
    push("F2 on S3".into(), trivial("F2", &s3, s3.whole()));
    let a3 = s3.resolve("C3").unwrap();
    push(
        "F4 through the sign of S3".into(),
        frobenius_through("F4", &s3, s3.whole(), a3),
    );
    out
}

pub struct Entry {
    pub name: String,
    pub functor: TambaraData,
    /// `(H, ℓ)` when the functor was built as `Coind_H ℓ`.
    pub coinduced_from: Option<(SubgroupId, TambaraData)>,
}

fn entry(name: impl Into<String>, functor: TambaraData) -> Entry {
    Entry {
        name: name.into(),
        functor,
        coinduced_from: None,
    }
}

fn coind_entry(name: impl Into<String>, inner: TambaraData, to: SubgroupId) -> Entry {
    Entry {
        name: name.into(),
        functor: coinduce(&inner, to).unwrap(),
        coinduced_from: Some((inner.base(), inner)),
    }
}

pub fn fp_over(r: &str, g: &Arc<FiniteGroup>, h: SubgroupId) -> TambaraData {
    fixed_point_functor(&trivial(r, g, h))
}

/// Constructor outputs: fixed points of every corpus G-ring, Burnside
/// functors, products, coinductions and restrictions.
pub fn functor_corpus() -> Vec<Entry> {
    let mut out: Vec<Entry> = gring_corpus()
        .into_iter()
        .map(|(name, r)| entry(format!("FP({name})"), fixed_point_functor(&r)))
        .collect();
    for g in ["C2", "C3", "C4"] {
        let grp = group(g);
        for n in [2, 3, 4, 9] {
            out.push(entry(
                format!("Burnside({g}) mod {n}"),
                burnside_mod(&grp, n).unwrap().data,
            ));
        }
    }
    out.extend(coinduction_corpus());

    let c2 = group("C2");
    let f4 = fixed_point_functor(&frobenius_through("F4", &c2, c2.whole(), c2.trivial()));
    let f2 = fp_over("F2", &c2, c2.whole());
    out.push(entry(
        "FP(F2) x FP(F4 Galois) on C2",
        TambaraData::product(&[&f2, &f4]).unwrap(),
    ));
    let b = burnside_mod(&c2, 2).unwrap().data;
    let coind = coinduce(&fp_over("F3", &c2, c2.trivial()), c2.whole()).unwrap();
    out.push(entry(
        "Burnside(C2) mod 2 x Coind_e F3",
        TambaraData::product(&[&b, &coind]).unwrap(),
    ));

    let s3 = group("S3");
    let sign = fixed_point_functor(&frobenius_through(
        "F4",
        &s3,
        s3.whole(),
        s3.resolve("C3").unwrap(),
    ));
    for h in ["C2.0", "C3"] {
        out.push(entry(
            format!("Res_{h} FP(F4 sign on S3)"),
            sign.restrict(s3.resolve(h).unwrap()).unwrap(),
        ));
    }
    let c4 = group("C4");
    let b4 = burnside_mod(&c4, 4).unwrap().data;
    out.push(entry(
        "Res_C2 Burnside(C4) mod 4",
        b4.restrict(c4.resolve("C2").unwrap()).unwrap(),
    ));
    let coind_s3 = coinduce(&fp_over("F2", &s3, s3.trivial()), s3.whole()).unwrap();
    out.push(entry(
        "Res_C2.0 Coind_e^S3 F2",
        coind_s3.restrict(s3.resolve("C2.0").unwrap()).unwrap(),
    ));
    out
}

/// Coinductions `Coind_H^G ℓ`, mostly with `ℓ` clarified.
pub fn coinduction_corpus() -> Vec<Entry> {
    let mut out = Vec::new();
    let c2 = group("C2");
    for r in ["F2", "F3"] {
        out.push(coind_entry(
            format!("Coind_e^C2 {r}"),
            fp_over(r, &c2, c2.trivial()),
            c2.whole(),
        ));
    }
    let c3 = group("C3");
    out.push(coind_entry(
        "Coind_e^C3 F2",
        fp_over("F2", &c3, c3.trivial()),
        c3.whole(),
    ));
    let c4 = group("C4");
    let c2_in_c4 = c4.resolve("C2").unwrap();
    out.push(coind_entry(
        "Coind_e^C4 F2",
        fp_over("F2", &c4, c4.trivial()),
        c4.whole(),
    ));
    out.push(coind_entry(
        "Coind_C2^C4 FP(F4 Galois)",
        fixed_point_functor(&frobenius_through("F4", &c4, c2_in_c4, c4.trivial())),
        c4.whole(),
    ));
    let b4 = burnside_mod(&c4, 4).unwrap().data;
    out.push(coind_entry(
        "Coind_C2^C4 Res Burnside mod 4",
        b4.restrict(c2_in_c4).unwrap(),
        c4.whole(),
    ));
    let swap = GRing::from_action(ring("F2xF2"), &c4, c2_in_c4, |g, x| {
        if g == 0 {
            x
        } else {
            2 * (x % 2) + x / 2
        }
    })
    .unwrap();
    out.push(coind_entry(
        "Coind_C2^C4 FP(F2xF2 swap)",
        fixed_point_functor(&swap),
        c4.whole(),
    ));
    let v4 = group("V4");
    out.push(coind_entry(
        "Coind_e^V4 F2",
        fp_over("F2", &v4, v4.trivial()),
        v4.whole(),
    ));
    out.push(coind_entry(
        "Coind_C2.0^V4 F3",
        fp_over("F3", &v4, v4.resolve("C2.0").unwrap()),
        v4.whole(),
    ));
    let s3 = group("S3");
    out.push(coind_entry(
        "Coind_e^S3 F2",
        fp_over("F2", &s3, s3.trivial()),
        s3.whole(),
    ));
    out.push(coind_entry(
        "Coind_C2.0^S3 F2",
        fp_over("F2", &s3, s3.resolve("C2.0").unwrap()),
        s3.whole(),
    ));
    out.push(coind_entry(
        "Coind_C3^S3 F2",
        fp_over("F2", &s3, s3.resolve("C3").unwrap()),
        s3.whole(),
    ));
    out.push(coind_entry(
        "Coind_S3^S3 F2",
        fp_over("F2", &s3, s3.whole()),
        s3.whole(),
    ));
    out
}

/// Checks element by element that `m` is a levelwise ring isomorphism
/// commuting with restriction, transfer, norm and conjugation.
pub fn check_isomorphism(m: &TambaraMorphism) -> Result<(), String> {
    check_morphism(m)?;
    let (s, t) = (&m.source, &m.target);
    for h in s.subgroups() {
        let mut hit = vec![false; t.level(h).size()];
        for x in s.level(h).elements() {
            hit[m.apply(h, x)] = true;
        }
        if s.level(h).size() != t.level(h).size() || hit.contains(&false) {
            return Err(format!("level {} is not a bijection", s.group().label(h)));
        }
    }
    Ok(())
}

pub fn check_morphism(m: &TambaraMorphism) -> Result<(), String> {
    let (s, t) = (&m.source, &m.target);
    let g = s.group();
    if **g != **t.group() || s.base() != t.base() {
        return Err("source and target live over different groups".into());
    }
    for h in s.subgroups() {
        let (a, b) = (s.level(h), t.level(h));
        if m.apply(h, a.one()) != b.one() {
            return Err(format!("unit not preserved at {}", g.label(h)));
        }
        for x in a.elements() {
            for y in a.elements() {
                let (fx, fy) = (m.apply(h, x), m.apply(h, y));
                if m.apply(h, a.add(x, y)) != b.add(fx, fy)
                    || m.apply(h, a.mul(x, y)) != b.mul(fx, fy)
                {
                    return Err(format!("not a ring map at {} on ({x}, {y})", g.label(h)));
                }
            }
        }
        for &c in g.subgroup(s.base()).elements() {
            let ch = g.conjugate(c, h);
            for x in a.elements() {
                if m.apply(ch, s.conj(c, h, x)) != t.conj(c, h, m.apply(h, x)) {
                    return Err(format!(
                        "conjugation by {c} at {} not preserved",
                        g.label(h)
                    ));
                }
            }
        }
    }
    for (k, h) in s.inclusions() {
        if k == h {
            continue;
        }
        for x in s.level(h).elements() {
            if m.apply(k, s.res(k, h, x)) != t.res(k, h, m.apply(h, x)) {
                return Err(format!("res {}<-{} not preserved", g.label(k), g.label(h)));
            }
        }
        for x in s.level(k).elements() {
            if m.apply(h, s.tr(k, h, x)) != t.tr(k, h, m.apply(k, x)) {
                return Err(format!("tr {}->{} not preserved", g.label(k), g.label(h)));
            }
            if s.has_norms() && m.apply(h, s.nm(k, h, x)) != t.nm(k, h, m.apply(k, x)) {
                return Err(format!("nm {}->{} not preserved", g.label(k), g.label(h)));
            }
        }
    }
    Ok(())
}
