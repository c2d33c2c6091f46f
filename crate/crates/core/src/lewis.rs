//! Text Lewis diagrams for functors whose subgroup lattice is a chain.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::functors::TambaraData;
use crate::groups::SubgroupId;
use crate::rings::FiniteRing;

/// Maps with at most this many source elements are printed in full.
const FULL_TABLE: usize = 16;

/// The subgroups of the base in increasing order, if they form a chain.
pub fn subgroup_chain(t: &TambaraData) -> Result<Vec<SubgroupId>> {
    let group = t.group();
    let mut subs = t.subgroups();
    subs.sort_by_key(|&h| group.subgroup(h).order());
    for w in subs.windows(2) {
        if !group.is_subgroup(w[0], w[1]) {
            return Err(Error::NotChain(format!(
                "{} and {} are incomparable; pass an explicit chain",
                group.label(w[0]),
                group.label(w[1])
            )));
        }
    }
    Ok(subs)
}

/// Checks that `chain` is strictly increasing inside the base.
pub fn validate_chain(t: &TambaraData, chain: &[SubgroupId]) -> Result<()> {
    let group = t.group();
    if chain.is_empty() {
        return Err(Error::NotChain("empty chain".into()));
    }
    for &h in chain {
        if !group.is_subgroup(h, t.base()) {
            return Err(Error::NotChain(format!(
                "{} is not a subgroup of the base",
                group.label(h)
            )));
        }
    }
    for w in chain.windows(2) {
        if w[0] == w[1] || !group.is_subgroup(w[0], w[1]) {
            return Err(Error::NotChain(format!(
                "{} is not properly contained in {}",
                group.label(w[0]),
                group.label(w[1])
            )));
        }
    }
    Ok(())
}

fn images(from: &FiniteRing, to: &FiniteRing, xs: &[usize], f: impl Fn(usize) -> usize) -> String {
    xs.iter()
        .map(|&x| format!("{} -> {}", from.name(x), to.name(f(x))))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Elements of the base acting nontrivially, reduced to a generating set.
fn acting_generators(t: &TambaraData) -> Vec<usize> {
    let group = t.group();
    let mut gens: Vec<usize> = Vec::new();
    let mut span = group.generated(&[]);
    for &g in group.subgroup(t.base()).elements() {
        if !group.subgroup(span).contains(g) {
            gens.push(g);
            span = group.generated(&gens);
        }
    }
    gens
}

/// Levels from bottom to top, each followed by the maps to the next level.
/// Additive maps show generator images; norms show the full table on small
/// levels and multiplicative generator images otherwise.
pub fn lewis_diagram(t: &TambaraData, chain: Option<&[SubgroupId]>) -> Result<String> {
    let group = t.group();
    let chain = match chain {
        Some(c) => {
            validate_chain(t, c)?;
            c.to_vec()
        }
        None => subgroup_chain(t)?,
    };
    let gens = acting_generators(t);
    let kind = if t.has_norms() { "Tambara" } else { "Green" };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{kind} functor over {} (group {}), bottom to top",
        group.label(t.base()),
        group.name()
    );
    for (i, &h) in chain.iter().enumerate() {
        let r = t.level(h);
        let _ = writeln!(
            out,
            "[{}] {}, {} elements",
            group.label(h),
            r.label(),
            r.size()
        );
        let rgens = r.additive_generators();
        for &g in &gens {
            if rgens.iter().all(|&x| t.conj(g, h, x) == x) {
                continue;
            }
            let _ = writeln!(
                out,
                "    c_{g}: {}",
                images(r, r, &rgens, |x| t.conj(g, h, x))
            );
        }
        let Some(&up) = chain.get(i + 1) else { break };
        let s = t.level(up);
        let sgens = s.additive_generators();
        let (kl, hl) = (group.label(h), group.label(up));
        let _ = writeln!(
            out,
            "  | res {kl}<-{hl}: {}",
            images(s, r, &sgens, |x| t.res(h, up, x))
        );
        let _ = writeln!(
            out,
            "  | tr  {kl}->{hl}: {}",
            images(r, s, &rgens, |x| t.tr(h, up, x))
        );
        if t.has_norms() {
            let xs: Vec<usize> = if r.size() <= FULL_TABLE {
                r.elements().collect()
            } else {
                r.multiplicative_generators()
            };
            let _ = writeln!(
                out,
                "  | nm  {kl}->{hl}: {}",
                images(r, s, &xs, |x| t.nm(h, up, x))
            );
        }
    }
    Ok(out)
}
