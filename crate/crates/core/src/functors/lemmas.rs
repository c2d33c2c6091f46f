//! Exhaustive checks of three facts about norms and transfers.

use crate::error::{Error, Result};
use crate::groups::SubgroupId;

use super::TambaraData;

/// Additive span of the images of `Tr_K^L` for `K ⊊ L`, as a membership mask.
pub fn proper_transfer_span(t: &TambaraData, l: SubgroupId) -> Vec<bool> {
    let ring = t.level(l);
    let mut inside = vec![false; ring.size()];
    inside[ring.zero()] = true;
    let mut members = vec![ring.zero()];
    for k in t.group().subgroups_of(l) {
        if k == l {
            continue;
        }
        for x in t.level(k).elements() {
            let y = t.tr(k, l, x);
            if inside[y] {
                continue;
            }
            let current = members.clone();
            let mut m = y;
            while m != ring.zero() {
                for &s in &current {
                    let z = ring.add(s, m);
                    if !inside[z] {
                        inside[z] = true;
                        members.push(z);
                    }
                }
                m = ring.add(m, y);
            }
        }
    }
    inside
}

/// Ideal generated by the images of proper transfers into level `l`.
pub fn proper_transfer_ideal(t: &TambaraData, l: SubgroupId) -> Vec<bool> {
    let span = proper_transfer_span(t, l);
    let ring = t.level(l);
    let gens: Vec<usize> = ring.elements().filter(|&x| span[x]).collect();
    ring.ideal(&gens)
}

/// `Nm(a + b) − Nm(a) − Nm(b)` lies in the span of proper transfers, for all
/// `a, b` at every level `K ⊊ L`. Returns the number of pairs checked.
pub fn check_norm_additivity_up_to_transfers(t: &TambaraData) -> Result<u64> {
    if !t.has_norms() {
        return Err(Error::NoNorms);
    }
    let group = t.group();
    let mut checked = 0;
    for l in t.subgroups() {
        let span = proper_transfer_span(t, l);
        let rl = t.level(l);
        for k in group.subgroups_of(l) {
            if k == l {
                continue;
            }
            let rk = t.level(k);
            for a in rk.elements() {
                for b in rk.elements() {
                    let d = rl.sub(
                        rl.sub(t.nm(k, l, rk.add(a, b)), t.nm(k, l, a)),
                        t.nm(k, l, b),
                    );
                    if !span[d] {
                        return Err(Error::VerificationFailed(format!(
                            "Nm^{}_{}({a}+{b}) - Nm({a}) - Nm({b}) = {d} is not a sum of proper transfers",
                            group.label(l),
                            group.label(k)
                        )));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

/// `Nm_e^H(a + b) = Nm_e^H(a) + Nm_e^H(b)` for orthogonal idempotents `a, b`
/// of the bottom level fixed by the base. Returns the number of checks.
pub fn check_orthogonal_idempotent_norms(t: &TambaraData) -> Result<u64> {
    if !t.has_norms() {
        return Err(Error::NoNorms);
    }
    let group = t.group();
    let e = group.trivial();
    let bottom = t.bottom();
    let elems = group.subgroup(t.base()).elements();
    let fixed: Vec<usize> = bottom
        .idempotents()
        .into_iter()
        .filter(|&x| elems.iter().all(|&g| t.conj(g, e, x) == x))
        .collect();
    let mut checked = 0;
    for &a in &fixed {
        for &b in &fixed {
            if bottom.mul(a, b) != bottom.zero() {
                continue;
            }
            for h in t.subgroups() {
                let rh = t.level(h);
                let lhs = t.nm(e, h, bottom.add(a, b));
                let rhs = rh.add(t.nm(e, h, a), t.nm(e, h, b));
                if lhs != rhs {
                    return Err(Error::VerificationFailed(format!(
                        "Nm_e^{}({a}+{b}) = {lhs} but Nm({a}) + Nm({b}) = {rhs}",
                        group.label(h)
                    )));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// For `t` coinduced from `h`: at every level `L` not subconjugate to `h`
/// the proper transfers generate the unit ideal. Returns the number of levels checked.
pub fn check_transfer_ideal_contains_one(t: &TambaraData, h: SubgroupId) -> Result<u64> {
    let group = t.group();
    let mut checked = 0;
    for l in t.subgroups() {
        if group.is_subconjugate_in(t.base(), l, h) {
            continue;
        }
        if !proper_transfer_ideal(t, l)[t.level(l).one()] {
            return Err(Error::VerificationFailed(format!(
                "proper transfers into level {} do not generate the unit ideal",
                group.label(l)
            )));
        }
        checked += 1;
    }
    Ok(checked)
}
