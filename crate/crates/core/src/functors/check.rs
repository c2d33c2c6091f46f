//! Exhaustive verification of the Mackey, Green and Tambara axioms.
//!
//! Checks on maps that are additive in their argument only run over additive
//! generators, and multiplicativity of norms over multiplicative generators;
//! both are equivalent to checking every element once the additive structure
//! maps are known to be additive.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::Error;
use crate::groups::SubgroupId;
use crate::gsets::{dependent_product, GSet, GSetMap};
use crate::rings::FiniteRing;

use super::{MapKind, TambaraData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomFamily {
    /// Ring/additive/multiplicative contracts, identities and functoriality.
    StructureMaps,
    /// `c_h = id` for `h ∈ H`, `c_g c_g' = c_gg'` and intertwining with res/tr/nm.
    Conjugation,
    TransferDoubleCoset,
    NormDoubleCoset,
    Frobenius,
    Exponential,
}

impl AxiomFamily {
    pub const ALL: [AxiomFamily; 6] = [
        AxiomFamily::StructureMaps,
        AxiomFamily::Conjugation,
        AxiomFamily::TransferDoubleCoset,
        AxiomFamily::NormDoubleCoset,
        AxiomFamily::Frobenius,
        AxiomFamily::Exponential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomFamily::StructureMaps => "structure maps",
            AxiomFamily::Conjugation => "conjugation",
            AxiomFamily::TransferDoubleCoset => "transfer double coset formula",
            AxiomFamily::NormDoubleCoset => "norm double coset formula",
            AxiomFamily::Frobenius => "Frobenius reciprocity",
            AxiomFamily::Exponential => "exponential formula",
        }
    }

    pub fn needs_norms(self) -> bool {
        matches!(
            self,
            AxiomFamily::NormDoubleCoset | AxiomFamily::Exponential
        )
    }
}

impl fmt::Display for AxiomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    /// Largest fiber `|p⁻¹(x)|` of the maps `p: A → G/K` in exponential diagrams.
    pub fiber_bound: usize,
    /// Exponential diagrams whose dependent product exceeds this are skipped.
    pub section_cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            fiber_bound: 2,
            section_cap: 1 << 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The family needs norms and the functor has none.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyResult {
    pub family: AxiomFamily,
    pub status: Status,
    /// Number of identities evaluated.
    pub checks: u64,
    /// Exponential diagrams skipped because of the section cap.
    pub skipped_diagrams: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<FamilyResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&FamilyResult> {
        self.results.iter().find(|r| r.status == Status::Fail)
    }

    pub fn family(&self, family: AxiomFamily) -> &FamilyResult {
        self.results
            .iter()
            .find(|r| r.family == family)
            .expect("every family is reported")
    }

    pub fn failed(&self, family: AxiomFamily) -> bool {
        self.family(family).status == Status::Fail
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match r.status {
                Status::Pass => {
                    write!(f, "pass  {} ({} checks", r.family, r.checks)?;
                    if r.skipped_diagrams > 0 {
                        write!(
                            f,
                            ", {} diagrams over the section cap skipped",
                            r.skipped_diagrams
                        )?;
                    }
                    writeln!(f, ")")?;
                }
                Status::Fail => writeln!(
                    f,
                    "FAIL  {}: {}",
                    r.family,
                    r.witness.as_deref().unwrap_or("")
                )?,
                Status::Skipped => writeln!(f, "skip  {} (no norms)", r.family)?,
            }
        }
        Ok(())
    }
}

type CellResult = Result<u64, String>;

/// Runs cells in parallel and reports the first failure in cell order.
fn run_cells<P: Sync>(
    params: &[P],
    f: impl Fn(&P) -> CellResult + Sync + Send,
) -> (u64, Option<String>) {
    let outcomes: Vec<CellResult> = params.par_iter().map(f).collect();
    let mut total = 0;
    for o in outcomes {
        match o {
            Ok(n) => total += n,
            Err(w) => return (total, Some(w)),
        }
    }
    (total, None)
}

pub fn check_axioms(t: &TambaraData, config: &CheckConfig) -> AxiomReport {
    let results = AxiomFamily::ALL
        .iter()
        .map(|&family| {
            if family.needs_norms() && !t.has_norms() {
                return FamilyResult {
                    family,
                    status: Status::Skipped,
                    checks: 0,
                    skipped_diagrams: 0,
                    witness: None,
                };
            }
            let (checks, witness, skipped_diagrams) = match family {
                AxiomFamily::StructureMaps => with_zero(structure_maps(t)),
                AxiomFamily::Conjugation => with_zero(conjugation(t)),
                AxiomFamily::TransferDoubleCoset => with_zero(double_coset(t, MapKind::Tr)),
                AxiomFamily::NormDoubleCoset => with_zero(double_coset(t, MapKind::Nm)),
                AxiomFamily::Frobenius => with_zero(frobenius(t)),
                AxiomFamily::Exponential => exponential(t, config),
            };
            FamilyResult {
                family,
                status: if witness.is_some() {
                    Status::Fail
                } else {
                    Status::Pass
                },
                checks,
                skipped_diagrams,
                witness,
            }
        })
        .collect();
    AxiomReport { results }
}

fn with_zero((a, b): (u64, Option<String>)) -> (u64, Option<String>, usize) {
    (a, b, 0)
}

fn fail<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

fn check_ring_hom(what: &str, from: &FiniteRing, to: &FiniteRing, table: &[u32]) -> CellResult {
    let m = |x: usize| table[x] as usize;
    if m(from.one()) != to.one() {
        return fail(format!("{what} does not preserve 1"));
    }
    let gens = from.additive_generators();
    let mut n = 1;
    for x in from.elements() {
        for &g in &gens {
            if m(from.add(x, g)) != to.add(m(x), m(g)) {
                return fail(format!(
                    "{what} is not additive: f({x}+{g}) != f({x})+f({g})"
                ));
            }
            if m(from.mul(x, g)) != to.mul(m(x), m(g)) {
                return fail(format!(
                    "{what} is not multiplicative: f({x}·{g}) != f({x})·f({g})"
                ));
            }
            n += 2;
        }
    }
    Ok(n)
}

fn check_additive(what: &str, from: &FiniteRing, to: &FiniteRing, table: &[u32]) -> CellResult {
    let m = |x: usize| table[x] as usize;
    let gens = from.additive_generators();
    let mut n = 0;
    for x in from.elements() {
        for &g in &gens {
            if m(from.add(x, g)) != to.add(m(x), m(g)) {
                return fail(format!(
                    "{what} is not additive: f({x}+{g}) != f({x})+f({g})"
                ));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn check_multiplicative(
    what: &str,
    from: &FiniteRing,
    to: &FiniteRing,
    table: &[u32],
) -> CellResult {
    let m = |x: usize| table[x] as usize;
    if m(from.one()) != to.one() {
        return fail(format!("{what} does not preserve 1"));
    }
    if m(from.zero()) != to.zero() {
        return fail(format!("{what} does not preserve 0"));
    }
    let gens = from.multiplicative_generators();
    let mut n = 2;
    for x in from.elements() {
        for &g in &gens {
            if m(from.mul(x, g)) != to.mul(m(x), m(g)) {
                return fail(format!(
                    "{what} is not multiplicative: f({x}·{g}) != f({x})·f({g})"
                ));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn edge(t: &TambaraData, name: &str, k: SubgroupId, h: SubgroupId) -> String {
    format!("{name}[{}→{}]", t.group().label(k), t.group().label(h))
}

fn structure_maps(t: &TambaraData) -> (u64, Option<String>) {
    let inclusions = t.inclusions();
    let (a, w) = run_cells(&inclusions, |&(k, h)| {
        let (lk, lh) = (t.level(k), t.level(h));
        let mut n = check_ring_hom(&edge(t, "res", h, k), lh, lk, t.res_table(k, h))?;
        n += check_additive(&edge(t, "tr", k, h), lk, lh, t.tr_table(k, h))?;
        if t.has_norms() {
            n += check_multiplicative(&edge(t, "nm", k, h), lk, lh, t.nm_table(k, h))?;
        }
        if k == h {
            for x in lk.elements() {
                if t.res(k, k, x) != x
                    || t.tr(k, k, x) != x
                    || (t.has_norms() && t.nm(k, k, x) != x)
                {
                    return fail(format!(
                        "structure map at {} is not the identity on {x}",
                        t.group().label(k)
                    ));
                }
            }
            n += lk.size() as u64;
        }
        Ok(n)
    });
    if w.is_some() {
        return (a, w);
    }
    let group = t.group();
    let mut chains = Vec::new();
    for &(k, h) in &inclusions {
        for &l in &t.subgroups() {
            if group.is_subgroup(l, k) {
                chains.push((l, k, h));
            }
        }
    }
    let (b, w) = run_cells(&chains, |&(l, k, h)| {
        let mut n = 0;
        for x in t.level(h).elements() {
            if t.res(l, k, t.res(k, h, x)) != t.res(l, h, x) {
                return fail(format!(
                    "res is not functorial along {} ⊆ {} ⊆ {} at {x}",
                    group.label(l),
                    group.label(k),
                    group.label(h)
                ));
            }
            n += 1;
        }
        for x in t.level(l).elements() {
            if t.tr(k, h, t.tr(l, k, x)) != t.tr(l, h, x) {
                return fail(format!(
                    "tr is not functorial along {} ⊆ {} ⊆ {} at {x}",
                    group.label(l),
                    group.label(k),
                    group.label(h)
                ));
            }
            if t.has_norms() && t.nm(k, h, t.nm(l, k, x)) != t.nm(l, h, x) {
                return fail(format!(
                    "nm is not functorial along {} ⊆ {} ⊆ {} at {x}",
                    group.label(l),
                    group.label(k),
                    group.label(h)
                ));
            }
            n += 2;
        }
        Ok(n)
    });
    (a + b, w)
}

fn conjugation(t: &TambaraData) -> (u64, Option<String>) {
    let group = t.group();
    let base_elems = group.subgroup(t.base()).elements().to_vec();
    let subs = t.subgroups();
    let mut cells = Vec::new();
    for &g in &base_elems {
        for &h in &subs {
            cells.push((g, h));
        }
    }
    run_cells(&cells, |&(g, h)| {
        let gh = group.conjugate(g, h);
        let lh = t.level(h);
        let what = format!("c_{g} on {}", group.label(h));
        let mut n = check_ring_hom(&what, lh, t.level(gh), t.conj_table(g, h))?;
        if group.subgroup(h).contains(g) {
            if let Some(x) = lh.elements().find(|&x| t.conj(g, h, x) != x) {
                return fail(format!(
                    "{what} is not the identity although {g} ∈ {}: moves {x}",
                    group.label(h)
                ));
            }
            n += lh.size() as u64;
        }
        for &g2 in &base_elems {
            let g2h = group.conjugate(g2, h);
            let prod = group.mul(g, g2);
            for x in lh.elements() {
                if t.conj(g, g2h, t.conj(g2, h, x)) != t.conj(prod, h, x) {
                    return fail(format!(
                        "c_{g} c_{g2} != c_{prod} on {} at {x}",
                        group.label(h)
                    ));
                }
            }
            n += lh.size() as u64;
        }
        for &k in &subs {
            if !group.is_subgroup(k, h) {
                continue;
            }
            let gk = group.conjugate(g, k);
            for x in lh.elements() {
                if t.conj(g, k, t.res(k, h, x)) != t.res(gk, gh, t.conj(g, h, x)) {
                    return fail(format!(
                        "c_{g} does not commute with {} at {x}",
                        edge(t, "res", h, k)
                    ));
                }
            }
            for x in t.level(k).elements() {
                if t.conj(g, h, t.tr(k, h, x)) != t.tr(gk, gh, t.conj(g, k, x)) {
                    return fail(format!(
                        "c_{g} does not commute with {} at {x}",
                        edge(t, "tr", k, h)
                    ));
                }
                if t.has_norms() && t.conj(g, h, t.nm(k, h, x)) != t.nm(gk, gh, t.conj(g, k, x)) {
                    return fail(format!(
                        "c_{g} does not commute with {} at {x}",
                        edge(t, "nm", k, h)
                    ));
                }
            }
            n += (lh.size() + 2 * t.level(k).size()) as u64;
        }
        Ok(n)
    })
}

/// `Res^H_L Tr^H_K = Σ_{g ∈ L\H/K} Tr^L_{L∩gKg⁻¹} c_g Res^K_{g⁻¹Lg∩K}` and the
/// multiplicative analogue for norms.
fn double_coset(t: &TambaraData, kind: MapKind) -> (u64, Option<String>) {
    let group = t.group();
    let subs = t.subgroups();
    let mut cells = Vec::new();
    for &h in &subs {
        for &l in &subs {
            for &k in &subs {
                if group.is_subgroup(l, h) && group.is_subgroup(k, h) {
                    cells.push((l, k, h));
                }
            }
        }
    }
    run_cells(&cells, |&(l, k, h)| {
        let lk = t.level(k);
        let ll = t.level(l);
        let terms: Vec<(usize, SubgroupId, SubgroupId)> = group
            .double_cosets_in(h, l, k)
            .iter()
            .map(|dc| {
                let g = dc.rep;
                let inner = group.intersection(group.conjugate(group.inv(g), l), k);
                (g, inner, group.conjugate(g, inner))
            })
            .collect();
        let xs: Vec<usize> = match kind {
            MapKind::Tr => lk.additive_generators(),
            _ => lk.elements().collect(),
        };
        for &x in &xs {
            let (lhs, rhs) = match kind {
                MapKind::Tr => (
                    t.res(l, h, t.tr(k, h, x)),
                    ll.sum(terms.iter().map(|&(g, inner, outer)| {
                        t.tr(outer, l, t.conj(g, inner, t.res(inner, k, x)))
                    })),
                ),
                _ => (
                    t.res(l, h, t.nm(k, h, x)),
                    ll.product_of(terms.iter().map(|&(g, inner, outer)| {
                        t.nm(outer, l, t.conj(g, inner, t.res(inner, k, x)))
                    })),
                ),
            };
            if lhs != rhs {
                let name = if kind == MapKind::Tr { "Tr" } else { "Nm" };
                return fail(format!(
                    "Res^{h}_{l} {name}^{h}_{k}({x}) = {lhs} but the double coset sum is {rhs}",
                    h = group.label(h),
                    l = group.label(l),
                    k = group.label(k)
                ));
            }
        }
        Ok(xs.len() as u64)
    })
}

/// `Tr(x · Res(y)) = y · Tr(x)`.
fn frobenius(t: &TambaraData) -> (u64, Option<String>) {
    let inclusions: Vec<(SubgroupId, SubgroupId)> =
        t.inclusions().into_iter().filter(|(k, h)| k != h).collect();
    run_cells(&inclusions, |&(k, h)| {
        let (lk, lh) = (t.level(k), t.level(h));
        let xs = lk.additive_generators();
        let ys = lh.additive_generators();
        for &x in &xs {
            for &y in &ys {
                let lhs = t.tr(k, h, lk.mul(x, t.res(k, h, y)));
                let rhs = lh.mul(y, t.tr(k, h, x));
                if lhs != rhs {
                    return fail(format!(
                        "Tr^{}_{}(x·Res(y)) != y·Tr(x) for x = {x}, y = {y}: {lhs} vs {rhs}",
                        t.group().label(h),
                        t.group().label(k)
                    ));
                }
            }
        }
        Ok((xs.len() * ys.len()) as u64)
    })
}

/// Multisets of `K`-conjugacy class representatives `M ⊆ K` with
/// `Σ [K:M] ≤ bound`, as sorted lists.
fn fiber_shapes(t: &TambaraData, k: SubgroupId, bound: usize) -> Vec<Vec<SubgroupId>> {
    let group = t.group();
    let order = group.subgroup(k).order();
    let mut reps: Vec<SubgroupId> = group
        .subgroups_of(k)
        .into_iter()
        .filter(|&m| group.class_rep_in(k, m) == m && order / group.subgroup(m).order() <= bound)
        .collect();
    reps.sort();
    let mut out = Vec::new();
    fn rec(
        reps: &[SubgroupId],
        start: usize,
        room: usize,
        cur: &mut Vec<SubgroupId>,
        out: &mut Vec<Vec<SubgroupId>>,
        index: &dyn Fn(SubgroupId) -> usize,
    ) {
        out.push(cur.clone());
        for i in start..reps.len() {
            let c = index(reps[i]);
            if c <= room {
                cur.push(reps[i]);
                rec(reps, i, room - c, cur, out, index);
                cur.pop();
            }
        }
    }
    let index = |m: SubgroupId| order / group.subgroup(m).order();
    rec(&reps, 0, bound, &mut Vec::new(), &mut out, &index);
    out
}

/// `Nm_f Tr_p = Tr_π Nm_q Res_e` on the exponential diagram of `f: B/K → B/H`
/// and `p: ⊔ B/M_i → B/K`.
fn exponential(t: &TambaraData, config: &CheckConfig) -> (u64, Option<String>, usize) {
    let group = t.group();
    let base = t.base();
    let mut cells = Vec::new();
    for (k, h) in t.inclusions() {
        if k == h {
            continue;
        }
        for shape in fiber_shapes(t, k, config.fiber_bound) {
            cells.push((k, h, shape));
        }
    }
    let outcomes: Vec<Result<(u64, usize), String>> = cells
        .par_iter()
        .map(|(k, h, shape)| {
            let f = GSetMap::projection(group, base, *k, *h);
            let parts: Vec<GSet> = shape.iter().map(|&m| GSet::cosets(group, base, m)).collect();
            let a = if parts.is_empty() {
                Arc::new(GSet::empty(group, base))
            } else {
                Arc::new(GSet::disjoint_union(&parts.iter().collect::<Vec<_>>()).map_err(|e| e.to_string())?)
            };
            let mut images = Vec::new();
            for &m in shape {
                images.extend(GSetMap::projection(group, base, m, *k).images);
            }
            let p = GSetMap {
                source: a,
                target: Arc::clone(&f.source),
                images,
            };
            let d = match dependent_product(&f, &p, config.section_cap) {
                Ok(d) => d,
                Err(Error::Unsupported(_)) => return Ok((0, 1)),
                Err(e) => return Err(e.to_string()),
            };
            let plan = |m: &GSetMap, kind| t.eval_along(m, kind).map_err(|e| e.to_string());
            let tr_p = plan(&p, MapKind::Tr)?;
            let nm_f = plan(&f, MapKind::Nm)?;
            let res_e = plan(&d.evaluation, MapKind::Res)?;
            let nm_q = plan(&d.corner_projection, MapKind::Nm)?;
            let tr_pi = plan(&d.projection, MapKind::Tr)?;
            let sizes: Vec<usize> = tr_p.source_levels.iter().map(|&m| t.level(m).size()).collect();
            let total: usize = sizes.iter().product();
            for idx in 0..total {
                let v = FiniteRing::product_parts(&sizes, idx);
                let lhs = nm_f.apply(t, &tr_p.apply(t, &v));
                let rhs = tr_pi.apply(t, &nm_q.apply(t, &res_e.apply(t, &v)));
                if lhs != rhs {
                    let shape_names: Vec<&str> = shape.iter().map(|&m| group.label(m)).collect();
                    return Err(format!(
                        "f: {b}/{k} → {b}/{h}, A = ⊔{b}/[{shape}], a = {v:?}: Nm_f Tr_p(a) = {lhs:?} but Tr Nm Res(a) = {rhs:?}",
                        b = group.label(base),
                        k = group.label(*k),
                        h = group.label(*h),
                        shape = shape_names.join(", ")
                    ));
                }
            }
            Ok((total as u64, 0))
        })
        .collect();
    let mut checks = 0;
    let mut skipped = 0;
    for o in outcomes {
        match o {
            Ok((n, s)) => {
                checks += n;
                skipped += s;
            }
            Err(w) => return (checks, Some(w), skipped),
        }
    }
    (checks, None, skipped)
}
