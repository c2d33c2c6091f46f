//! The Burnside Tambara functor with coefficients reduced mod `N`.
//!
//! Level `H` is spanned by the transitive sets `H/M`, one per `H`-class of
//! subgroups, ordered by subgroup id. Products, restrictions and norms are
//! computed on marks `φ_Q(X) = |X^Q|` and converted back through the
//! triangular table of marks. Reducing coefficients mod `N` is not compatible
//! with norms on its own, so each level is further divided by the Tambara
//! ideal generated by `N`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, SubgroupId};
use crate::rings::{FiniteRing, MAX_RING_SIZE};

use super::{TambaraBuilder, TambaraData};

/// Largest group order accepted.
pub const MAX_BURNSIDE_ORDER: usize = 12;

/// `A(−) / N` together with the basis and projection for each level.
#[derive(Clone, Debug)]
pub struct BurnsideFunctor {
    pub data: TambaraData,
    pub modulus: usize,
    bases: Vec<Vec<SubgroupId>>,
    projection: Vec<Vec<usize>>,
}

impl BurnsideFunctor {
    /// Subgroups `M` with `H/M` a basis element of level `H`.
    pub fn basis(&self, h: SubgroupId) -> &[SubgroupId] {
        &self.bases[h.0]
    }

    /// The element `Σ coeffs[i]·[H/M_i]` of level `h`.
    pub fn element(&self, h: SubgroupId, coeffs: &[i64]) -> usize {
        let n = self.modulus as i64;
        let parts: Vec<usize> = coeffs.iter().map(|&c| c.rem_euclid(n) as usize).collect();
        self.projection[h.0][FiniteRing::product_index(&vec![self.modulus; parts.len()], &parts)]
    }

    /// The class of the integer `a` at level `h`.
    pub fn integer(&self, h: SubgroupId, a: i64) -> usize {
        let mut coeffs = vec![0; self.bases[h.0].len()];
        *coeffs.last_mut().expect("H/H is a basis element") = a;
        self.element(h, &coeffs)
    }
}

struct Marks<'a> {
    group: &'a FiniteGroup,
    bases: Vec<Vec<SubgroupId>>,
}

impl Marks<'_> {
    /// `φ_p(H/M) = #{kM ∈ H/M : p ⊆ kMk⁻¹}` for `p ⊆ h`.
    fn mark(&self, h: SubgroupId, m: SubgroupId, p: SubgroupId) -> i128 {
        let g = self.group;
        g.coset_reps(h, m)
            .into_iter()
            .filter(|&k| g.is_subgroup(g.conjugate(g.inv(k), p), m))
            .count() as i128
    }

    fn marks_at(&self, h: SubgroupId, coeffs: &[i128], p: SubgroupId) -> Result<i128> {
        let mut total: i128 = 0;
        for (&c, &m) in coeffs.iter().zip(&self.bases[h.0]) {
            total = c
                .checked_mul(self.mark(h, m, p))
                .and_then(|v| total.checked_add(v))
                .ok_or_else(overflow)?;
        }
        Ok(total)
    }

    /// Coefficients of the virtual `H`-set with marks `marks` (indexed like the basis).
    fn solve(&self, h: SubgroupId, marks: &[i128]) -> Result<Vec<i128>> {
        let basis = &self.bases[h.0];
        let mut coeffs = vec![0i128; basis.len()];
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.group.subgroup(basis[i]).order()));
        for &i in &order {
            let q = basis[i];
            let mut rest = marks[i];
            for (j, &m) in basis.iter().enumerate() {
                if j != i && coeffs[j] != 0 {
                    rest = rest
                        .checked_sub(
                            coeffs[j]
                                .checked_mul(self.mark(h, m, q))
                                .ok_or_else(overflow)?,
                        )
                        .ok_or_else(overflow)?;
                }
            }
            let d = self.mark(h, q, q);
            if rest % d != 0 {
                return Err(Error::VerificationFailed("marks are not integral".into()));
            }
            coeffs[i] = rest / d;
        }
        Ok(coeffs)
    }

    fn all_marks(&self, h: SubgroupId, coeffs: &[i128]) -> Result<Vec<i128>> {
        self.bases[h.0]
            .iter()
            .map(|&q| self.marks_at(h, coeffs, q))
            .collect()
    }

    fn mul(&self, h: SubgroupId, a: &[i128], b: &[i128]) -> Result<Vec<i128>> {
        let (ma, mb) = (self.all_marks(h, a)?, self.all_marks(h, b)?);
        let m: Option<Vec<i128>> = ma.iter().zip(&mb).map(|(x, y)| x.checked_mul(*y)).collect();
        self.solve(h, &m.ok_or_else(overflow)?)
    }

    fn res(&self, k: SubgroupId, h: SubgroupId, a: &[i128]) -> Result<Vec<i128>> {
        let m: Result<Vec<i128>> = self.bases[k.0]
            .iter()
            .map(|&q| self.marks_at(h, a, q))
            .collect();
        self.solve(k, &m?)
    }

    fn tr(&self, k: SubgroupId, h: SubgroupId, a: &[i128]) -> Vec<i128> {
        let mut out = vec![0; self.bases[h.0].len()];
        for (&c, &m) in a.iter().zip(&self.bases[k.0]) {
            out[self.position(h, self.group.class_rep_in(h, m))] += c;
        }
        out
    }

    fn conj(&self, g: usize, h: SubgroupId, a: &[i128]) -> Vec<i128> {
        let gh = self.group.conjugate(g, h);
        let mut out = vec![0; self.bases[gh.0].len()];
        for (&c, &m) in a.iter().zip(&self.bases[h.0]) {
            let gm = self.group.class_rep_in(gh, self.group.conjugate(g, m));
            out[self.position(gh, gm)] += c;
        }
        out
    }

    /// `φ_Q(Nm x) = Π_{r ∈ Q\H/K} φ_{K ∩ r⁻¹Qr}(x)`.
    fn nm(&self, k: SubgroupId, h: SubgroupId, a: &[i128]) -> Result<Vec<i128>> {
        let g = self.group;
        let mut marks = Vec::new();
        for &q in &self.bases[h.0] {
            let mut prod: i128 = 1;
            for dc in g.double_cosets_in(h, q, k) {
                let p = g.intersection(k, g.conjugate(g.inv(dc.rep), q));
                prod = prod
                    .checked_mul(self.marks_at(k, a, p)?)
                    .ok_or_else(overflow)?;
            }
            marks.push(prod);
        }
        self.solve(h, &marks)
    }

    fn position(&self, h: SubgroupId, m: SubgroupId) -> usize {
        self.bases[h.0]
            .binary_search(&m)
            .expect("class representative")
    }
}

fn overflow() -> Error {
    Error::Unsupported("norm marks overflow 128-bit integers".into())
}

/// Level data while the ideal is being closed up.
struct Level {
    h: SubgroupId,
    b: usize,
    ring: FiniteRing,
    ideal: Vec<bool>,
}

impl Level {
    fn coeffs(&self, n: usize, x: usize) -> Vec<i128> {
        FiniteRing::product_parts(&vec![n; self.b], x)
            .into_iter()
            .map(|c| c as i128)
            .collect()
    }

    fn index(&self, n: usize, coeffs: &[i128]) -> usize {
        let parts: Vec<usize> = coeffs
            .iter()
            .map(|&c| c.rem_euclid(n as i128) as usize)
            .collect();
        FiniteRing::product_index(&vec![n; self.b], &parts)
    }
}

/// Additive generators of the subgroup with membership mask `mask`.
fn span_generators(ring: &FiniteRing, mask: &[bool]) -> Vec<usize> {
    let mut inside = vec![false; ring.size()];
    inside[ring.zero()] = true;
    let mut members = vec![ring.zero()];
    let mut gens = Vec::new();
    for x in ring.elements().filter(|&x| mask[x]) {
        if inside[x] {
            continue;
        }
        gens.push(x);
        let current = members.clone();
        let mut m = x;
        while m != ring.zero() {
            for &s in &current {
                let t = ring.add(s, m);
                if !inside[t] {
                    inside[t] = true;
                    members.push(t);
                }
            }
            m = ring.add(m, x);
        }
    }
    gens
}

/// `A(H) ⊗ Z/N` divided by the Tambara ideal generated by `N`, for every `H ⊆ G`.
pub fn burnside_mod(group: &Arc<FiniteGroup>, n: usize) -> Result<BurnsideFunctor> {
    if group.order() > MAX_BURNSIDE_ORDER {
        return Err(Error::Unsupported(format!(
            "Burnside functors are limited to groups of order at most {MAX_BURNSIDE_ORDER}"
        )));
    }
    if n < 2 {
        return Err(Error::invalid("the modulus must be at least 2"));
    }
    let subs: Vec<SubgroupId> = group.subgroup_ids().collect();
    let nsub = group.num_subgroups();
    let mut bases = vec![Vec::new(); nsub];
    for &h in &subs {
        bases[h.0] = group
            .subgroups_of(h)
            .into_iter()
            .filter(|&m| group.class_rep_in(h, m) == m)
            .collect();
    }
    let marks = Marks { group, bases };
    let mut levels = Vec::with_capacity(nsub);
    for &h in &subs {
        let b = marks.bases[h.0].len();
        let size = n
            .checked_pow(b as u32)
            .filter(|&s| s <= MAX_RING_SIZE)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "level {} would have {n}^{b} elements",
                    group.label(h)
                ))
            })?;
        let radix = vec![n; b];
        let unit: Vec<i128> = (0..b).map(|i| (i + 1 == b) as i128).collect();
        let mut basis_products = vec![vec![Vec::new(); b]; b];
        for i in 0..b {
            for j in 0..b {
                let (ei, ej): (Vec<i128>, Vec<i128>) = (
                    (0..b).map(|t| (t == i) as i128).collect(),
                    (0..b).map(|t| (t == j) as i128).collect(),
                );
                basis_products[i][j] = marks.mul(h, &ei, &ej)?;
            }
        }
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for x in 0..size {
            let cx = FiniteRing::product_parts(&radix, x);
            for y in 0..size {
                let cy = FiniteRing::product_parts(&radix, y);
                let sum: Vec<usize> = cx.iter().zip(&cy).map(|(a, b)| (a + b) % n).collect();
                add.push(FiniteRing::product_index(&radix, &sum) as u32);
                let mut prod = vec![0i128; b];
                for i in 0..b {
                    for j in 0..b {
                        let c = (cx[i] * cy[j]) as i128;
                        if c != 0 {
                            for (t, &v) in basis_products[i][j].iter().enumerate() {
                                prod[t] += c * v;
                            }
                        }
                    }
                }
                let prod: Vec<usize> = prod
                    .iter()
                    .map(|&c| c.rem_euclid(n as i128) as usize)
                    .collect();
                mul.push(FiniteRing::product_index(&radix, &prod) as u32);
            }
        }
        let names = (0..size)
            .map(|x| {
                let cx = FiniteRing::product_parts(&radix, x);
                let terms: Vec<String> = cx
                    .iter()
                    .zip(&marks.bases[h.0])
                    .filter(|(&c, _)| c != 0)
                    .map(|(&c, &m)| {
                        let set = if m == h {
                            String::new()
                        } else {
                            format!("[{}/{}]", group.label(h), group.label(m))
                        };
                        match (c, set.is_empty()) {
                            (_, true) => c.to_string(),
                            (1, false) => set,
                            _ => format!("{c}{set}"),
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            })
            .collect();
        let ring = FiniteRing::from_flat(
            format!("A({})/{n}", group.label(h)),
            size,
            add,
            mul,
            Some(names),
        )?;
        debug_assert_eq!(
            FiniteRing::product_parts(&radix, ring.one()),
            unit.iter().map(|&c| c as usize).collect::<Vec<_>>()
        );
        let ideal = vec![false; size];
        levels.push(Level { h, b, ring, ideal });
    }

    // generators Nm_L^M(N) of the ideal
    let mut pending: Vec<Vec<usize>> = vec![Vec::new(); nsub];
    for &m in &subs {
        for &l in &subs {
            if group.is_subgroup(l, m) {
                let mut nl = vec![0i128; levels[l.0].b];
                *nl.last_mut().unwrap() = n as i128;
                let v = marks.nm(l, m, &nl)?;
                pending[m.0].push(levels[m.0].index(n, &v));
            }
        }
    }
    loop {
        let mut changed = false;
        for lev in levels.iter_mut() {
            let mut gens: Vec<usize> = lev.ring.elements().filter(|&x| lev.ideal[x]).collect();
            gens.append(&mut pending[lev.h.0]);
            let mask = lev.ring.ideal(&gens);
            if mask != lev.ideal {
                lev.ideal = mask;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        for &h in &subs {
            let members: Vec<usize> = levels[h.0]
                .ring
                .elements()
                .filter(|&x| levels[h.0].ideal[x])
                .collect();
            for &k in &subs {
                if k == h || !group.is_subgroup(k, h) {
                    continue;
                }
                for &x in &members {
                    let v = marks.res(k, h, &levels[h.0].coeffs(n, x))?;
                    let y = levels[k.0].index(n, &v);
                    if !levels[k.0].ideal[y] {
                        pending[k.0].push(y);
                    }
                }
            }
            for g in 0..group.order() {
                let gh = group.conjugate(g, h);
                for &x in &members {
                    let y = levels[gh.0].index(n, &marks.conj(g, h, &levels[h.0].coeffs(n, x)));
                    if !levels[gh.0].ideal[y] {
                        pending[gh.0].push(y);
                    }
                }
            }
        }
        for &h in &subs {
            for &k in &subs {
                if k == h || !group.is_subgroup(k, h) {
                    continue;
                }
                let lk = &levels[k.0];
                for x in lk.ring.elements().filter(|&x| lk.ideal[x]) {
                    let y = levels[h.0].index(n, &marks.tr(k, h, &lk.coeffs(n, x)));
                    if !levels[h.0].ideal[y] {
                        pending[h.0].push(y);
                    }
                }
                // Nm(a + j) − Nm(a) for a a reduced lift and j an additive
                // generator of the ideal or N times a basis element
                let mut steps: Vec<Vec<i128>> = span_generators(&lk.ring, &lk.ideal)
                    .into_iter()
                    .map(|j| lk.coeffs(n, j))
                    .collect();
                for i in 0..lk.b {
                    steps.push(
                        (0..lk.b)
                            .map(|t| if t == i { n as i128 } else { 0 })
                            .collect(),
                    );
                }
                for a in lk.ring.elements() {
                    let ca = lk.coeffs(n, a);
                    let base = marks.nm(k, h, &ca)?;
                    for step in &steps {
                        let mut moved: Vec<i128> =
                            ca.iter().zip(step).map(|(x, y)| x + y).collect();
                        if step.iter().all(|&c| c < n as i128) {
                            moved.iter_mut().for_each(|c| *c %= n as i128);
                        }
                        let v = marks.nm(k, h, &moved)?;
                        let diff: Vec<i128> = v.iter().zip(&base).map(|(x, y)| x - y).collect();
                        let y = levels[h.0].index(n, &diff);
                        if !levels[h.0].ideal[y] {
                            pending[h.0].push(y);
                        }
                    }
                }
            }
        }
        for p in pending.iter_mut() {
            p.sort_unstable();
            p.dedup();
        }
    }

    let mut quotients = Vec::with_capacity(nsub);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(nsub);
    for lev in &levels {
        let (q, class) = lev.ring.quotient(&lev.ideal);
        let mut r = vec![usize::MAX; q.size()];
        for (x, &c) in class.iter().enumerate().rev() {
            r[c] = x;
        }
        let q = q.with_label(format!("A({})/{n}", group.label(lev.h)));
        quotients.push((Arc::new(q), class));
        reps.push(r);
    }
    let mut b = TambaraBuilder::new(group, group.whole(), true);
    for &h in &subs {
        b.level(h, Arc::clone(&quotients[h.0].0));
    }
    let image = |h: SubgroupId, v: &[i128]| quotients[h.0].1[levels[h.0].index(n, v)];
    for &h in &subs {
        for &k in &subs {
            if k == h || !group.is_subgroup(k, h) {
                continue;
            }
            let lift = |l: SubgroupId, c: usize| levels[l.0].coeffs(n, reps[l.0][c]);
            let res: Result<Vec<usize>> = (0..reps[h.0].len())
                .map(|c| Ok(image(k, &marks.res(k, h, &lift(h, c))?)))
                .collect();
            b.res(k, h, res?);
            b.tr(
                k,
                h,
                (0..reps[k.0].len())
                    .map(|c| image(h, &marks.tr(k, h, &lift(k, c))))
                    .collect(),
            );
            let nm: Result<Vec<usize>> = (0..reps[k.0].len())
                .map(|c| Ok(image(h, &marks.nm(k, h, &lift(k, c))?)))
                .collect();
            b.nm(k, h, nm?);
        }
        for g in 0..group.order() {
            let gh = group.conjugate(g, h);
            b.conj(
                g,
                h,
                (0..reps[h.0].len())
                    .map(|c| image(gh, &marks.conj(g, h, &levels[h.0].coeffs(n, reps[h.0][c]))))
                    .collect(),
            );
        }
    }
    let data = b.build()?;
    Ok(BurnsideFunctor {
        data,
        modulus: n,
        bases: marks.bases,
        projection: quotients.into_iter().map(|(_, c)| c).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{check_axioms, CheckConfig};

    #[test]
    fn c2_mod_4_lewis_diagram() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let bf = burnside_mod(&g, 4).unwrap();
        let (e, top) = (g.trivial(), g.whole());
        let t = &bf.data;
        assert_eq!(t.level(e).size(), 4);
        assert_eq!(t.level(top).size(), 8);
        let x = bf.element(top, &[1, 0]);
        assert_eq!(t.res(e, top, x), bf.integer(e, 2));
        assert_eq!(t.tr(e, top, bf.integer(e, 1)), x);
        for a in 0..4i64 {
            let expected = bf.element(top, &[(a * a - a) / 2, a]);
            assert_eq!(t.nm(e, top, bf.integer(e, a)), expected);
        }
        assert!(check_axioms(t, &CheckConfig::default()).passed());
    }

    #[test]
    fn c2_mod_2_is_constant() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let bf = burnside_mod(&g, 2).unwrap();
        assert_eq!(bf.data.level(g.whole()).size(), 2);
        assert_eq!(bf.data.bottom().size(), 2);
    }

    #[test]
    fn marks_of_c3_sets() {
        let g = FiniteGroup::cyclic(3);
        let bases = g.subgroup_ids().map(|h| g.subgroups_of(h)).collect();
        let m = Marks { group: &g, bases };
        // [C3/e]^2 = 3[C3/e]
        assert_eq!(m.mul(g.whole(), &[1, 0], &[1, 0]).unwrap(), vec![3, 0]);
        // Nm_e^{C3}(2) has marks (8, 2), so it is 2 + 2[C3/e]
        assert_eq!(m.nm(g.trivial(), g.whole(), &[2]).unwrap(), vec![2, 2]);
    }
}
