//! Rings with an action of a subgroup of the ambient group, and the idempotent
//! calculus on them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{FiniteRing, RingHom};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, SubgroupId, UpwardClosedSet};
use crate::search::{self, Structure};

/// A finite commutative ring with an action of the subgroup `acting` of
/// `group` by ring automorphisms.
#[derive(Clone, PartialEq, Eq)]
pub struct GRing {
    ring: Arc<FiniteRing>,
    group: Arc<FiniteGroup>,
    acting: SubgroupId,
    /// Row `i` is the automorphism of the `i`-th element of `acting`.
    action: Vec<u32>,
}

impl fmt::Debug for GRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GRing({:?} with {}-action)",
            self.ring,
            self.group.label(self.acting)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentReport {
    pub element: usize,
    pub isotropy: SubgroupId,
    pub orthogonal_orbit: bool,
    /// The type of the idempotent, present iff the orbit is orthogonal.
    pub idempotent_type: Option<SubgroupId>,
}

/// Greedy generating set of a subgroup.
pub(crate) fn subgroup_generators(group: &FiniteGroup, h: SubgroupId) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = group.trivial();
    for &g in group.subgroup(h).elements() {
        if !group.subgroup(current).contains(g) {
            gens.push(g);
            current = group.generated(&gens);
        }
    }
    gens
}

impl GRing {
    /// `rows[i]` is the automorphism of the `i`-th element of `acting`.
    pub fn new(
        ring: Arc<FiniteRing>,
        group: &Arc<FiniteGroup>,
        acting: SubgroupId,
        rows: &[Vec<usize>],
    ) -> Result<Self> {
        let elems = group.subgroup(acting).elements();
        let n = ring.size();
        if rows.len() != elems.len() {
            return Err(Error::invalid(format!(
                "ring action needs {} rows, got {}",
                elems.len(),
                rows.len()
            )));
        }
        let gens = ring.additive_generators();
        let mut action = Vec::with_capacity(n * elems.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::invalid(format!(
                    "action row {i} has wrong length or entries"
                )));
            }
            let mut seen = vec![false; n];
            if row.iter().any(|&x| std::mem::replace(&mut seen[x], true)) {
                return Err(Error::invalid(format!("action row {i} is not a bijection")));
            }
            if row[ring.one()] != ring.one() {
                return Err(Error::invalid(format!("action row {i} does not fix 1")));
            }
            for x in ring.elements() {
                for &g in &gens {
                    if row[ring.add(x, g)] != ring.add(row[x], row[g])
                        || row[ring.mul(x, g)] != ring.mul(row[x], row[g])
                    {
                        return Err(Error::invalid(format!(
                            "action row {i} is not a ring automorphism"
                        )));
                    }
                }
            }
            action.extend(row.iter().map(|&x| x as u32));
        }
        let r = GRing {
            ring,
            group: Arc::clone(group),
            acting,
            action,
        };
        for &g in elems {
            for &h in elems {
                let gh = group.mul(g, h);
                if r.ring
                    .elements()
                    .any(|x| r.act(gh, x) != r.act(g, r.act(h, x)))
                {
                    return Err(Error::invalid("ring action is not a group action"));
                }
            }
        }
        if r.ring.elements().any(|x| r.act(0, x) != x) {
            return Err(Error::invalid("identity does not act trivially"));
        }
        Ok(r)
    }

    /// The action `x ↦ f(g, x)` of each `g` in `acting`, validated like [`GRing::new`].
    pub fn from_action(
        ring: Arc<FiniteRing>,
        group: &Arc<FiniteGroup>,
        acting: SubgroupId,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let rows: Vec<Vec<usize>> = group
            .subgroup(acting)
            .elements()
            .iter()
            .map(|&g| ring.elements().map(|x| f(g, x)).collect())
            .collect();
        GRing::new(ring, group, acting, &rows)
    }

    pub(crate) fn from_fn(
        ring: Arc<FiniteRing>,
        group: &Arc<FiniteGroup>,
        acting: SubgroupId,
        f: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut action = Vec::with_capacity(ring.size() * group.subgroup(acting).order());
        for &g in group.subgroup(acting).elements() {
            for x in ring.elements() {
                action.push(f(g, x) as u32);
            }
        }
        GRing {
            ring,
            group: Arc::clone(group),
            acting,
            action,
        }
    }

    pub fn trivial(ring: Arc<FiniteRing>, group: &Arc<FiniteGroup>, acting: SubgroupId) -> Self {
        GRing::from_fn(ring, group, acting, |_, x| x)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn acting(&self) -> SubgroupId {
        self.acting
    }

    /// Action of the ambient element `g`, which must lie in `acting`.
    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        let row = self
            .group
            .subgroup(self.acting)
            .position(g)
            .expect("element does not lie in the acting subgroup");
        self.action[row * self.ring.size() + x] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.action
            .chunks(self.ring.size())
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// Elements fixed by every element of `h ⊆ acting`, sorted.
    pub fn fixed_points(&self, h: SubgroupId) -> Vec<usize> {
        let elems = self.group.subgroup(h).elements();
        self.ring
            .elements()
            .filter(|&x| elems.iter().all(|&g| self.act(g, x) == x))
            .collect()
    }

    pub fn isotropy(&self, x: usize) -> SubgroupId {
        let elems: Vec<usize> = self
            .group
            .subgroup(self.acting)
            .elements()
            .iter()
            .copied()
            .filter(|&g| self.act(g, x) == x)
            .collect();
        self.group
            .find_subgroup(&elems)
            .expect("isotropy is a subgroup")
    }

    pub fn classify_idempotent(&self, d: usize) -> Result<IdempotentReport> {
        let r = &self.ring;
        if r.mul(d, d) != d {
            return Err(Error::NotIdempotent(d));
        }
        let isotropy = self.isotropy(d);
        let stab = self.group.subgroup(isotropy);
        let orthogonal_orbit = self
            .group
            .subgroup(self.acting)
            .elements()
            .iter()
            .filter(|&&g| !stab.contains(g))
            .all(|&g| r.mul(d, self.act(g, d)) == r.zero());
        Ok(IdempotentReport {
            element: d,
            isotropy,
            orthogonal_orbit,
            idempotent_type: orthogonal_orbit.then_some(isotropy),
        })
    }

    /// Reports for every nonzero idempotent.
    pub fn idempotent_reports(&self) -> Vec<IdempotentReport> {
        self.ring
            .idempotents()
            .into_iter()
            .filter(|&e| e != self.ring.zero())
            .map(|e| self.classify_idempotent(e).expect("idempotent"))
            .collect()
    }

    /// The distinct types of nonzero idempotents, sorted.
    pub fn idempotent_types(&self) -> Vec<SubgroupId> {
        let mut types: Vec<SubgroupId> = self
            .idempotent_reports()
            .into_iter()
            .filter_map(|r| r.idempotent_type)
            .collect();
        types.sort();
        types.dedup();
        types
    }

    /// No idempotent has a type that is a proper subgroup of `acting`.
    pub fn is_clarified(&self) -> bool {
        self.idempotent_types().iter().all(|&t| t == self.acting)
    }

    /// Every idempotent type lies in `lambda`.
    pub fn is_lambda_clarified(&self, lambda: &UpwardClosedSet) -> bool {
        assert_eq!(
            lambda.base(),
            self.acting,
            "family lives over a different group"
        );
        self.idempotent_types().iter().all(|&t| lambda.contains(t))
    }

    /// `^g R`: the same ring with `g h g⁻¹` acting as `h` does.
    pub fn transport(&self, g: usize) -> GRing {
        let group = &self.group;
        let target = group.conjugate(g, self.acting);
        let gi = group.inv(g);
        GRing::from_fn(Arc::clone(&self.ring), group, target, |x, s| {
            self.act(group.mul(group.mul(gi, x), g), s)
        })
    }

    pub(crate) fn structure(&self) -> Structure {
        let mut s = self.ring.structure();
        for g in subgroup_generators(&self.group, self.acting) {
            s.unop(
                0,
                0,
                self.ring
                    .elements()
                    .map(|x| self.act(g, x) as u32)
                    .collect(),
            );
        }
        s
    }

    /// Checks that `images` is an equivariant ring homomorphism `self → target`.
    pub fn verify_hom(&self, target: &GRing, images: &[usize]) -> Result<()> {
        if self.acting != target.acting || *self.group != *target.group {
            return Err(Error::GroupMismatch("G-rings over different groups".into()));
        }
        RingHom {
            source: Arc::clone(&self.ring),
            target: Arc::clone(&target.ring),
            images: images.to_vec(),
        }
        .verify()?;
        for g in subgroup_generators(&self.group, self.acting) {
            for x in self.ring.elements() {
                if images[self.act(g, x)] != target.act(g, images[x]) {
                    return Err(Error::invalid(format!(
                        "map is not equivariant at element {x}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `Coind_H^K S` for `S` an `H`-ring and `H ⊆ K`: functions on the cosets `K/H`
/// (ordered by least element, each represented by it), with
/// `(γ·f)(c) = [r_c⁻¹ γ r_{γ⁻¹c}]·f(γ⁻¹c)`.
pub fn coinduce_gring(s: &GRing, k: SubgroupId) -> Result<GRing> {
    let group = &s.group;
    let h = s.acting;
    if !group.is_subgroup(h, k) {
        return Err(Error::invalid(format!(
            "cannot coinduce from {} to {}: not a subgroup",
            group.label(h),
            group.label(k)
        )));
    }
    if h == k {
        return Ok(s.clone());
    }
    let cosets = group.left_cosets(k, h);
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let m = cosets.len();
    let mut which = vec![usize::MAX; group.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            which[x] = i;
        }
    }
    let factors: Vec<&FiniteRing> = vec![s.ring.as_ref(); m];
    let ring = FiniteRing::product(&factors)?.with_label(format!(
        "Coind_{}^{}({})",
        group.label(h),
        group.label(k),
        s.ring.label()
    ));
    let sizes = vec![s.ring.size(); m];
    let ring = Arc::new(ring);
    Ok(GRing::from_fn(Arc::clone(&ring), group, k, |gamma, x| {
        let f = FiniteRing::product_parts(&sizes, x);
        let gi = group.inv(gamma);
        let out: Vec<usize> = (0..m)
            .map(|c| {
                let src = which[group.mul(gi, reps[c])];
                let twist = group.mul(group.mul(group.inv(reps[c]), gamma), reps[src]);
                s.act(twist, f[src])
            })
            .collect();
        FiniteRing::product_index(&sizes, &out)
    }))
}

/// The same ring with the action restricted to `k ⊆ acting`.
pub fn gring_restrict(r: &GRing, k: SubgroupId) -> Result<GRing> {
    if !r.group.is_subgroup(k, r.acting) {
        return Err(Error::invalid("restriction to a non-subgroup"));
    }
    Ok(GRing::from_fn(Arc::clone(&r.ring), &r.group, k, |g, x| {
        r.act(g, x)
    }))
}

/// Componentwise product with the diagonal action.
pub fn gring_product(parts: &[&GRing]) -> Result<GRing> {
    let first = parts
        .first()
        .ok_or_else(|| Error::invalid("empty product of G-rings"))?;
    for p in parts {
        if p.acting != first.acting || *p.group != *first.group {
            return Err(Error::GroupMismatch(
                "product of G-rings over different groups".into(),
            ));
        }
    }
    let rings: Vec<&FiniteRing> = parts.iter().map(|p| p.ring.as_ref()).collect();
    let sizes: Vec<usize> = rings.iter().map(|r| r.size()).collect();
    let ring = Arc::new(FiniteRing::product(&rings)?);
    Ok(GRing::from_fn(ring, &first.group, first.acting, |g, x| {
        let parts_x = FiniteRing::product_parts(&sizes, x);
        let out: Vec<usize> = parts_x
            .iter()
            .zip(parts)
            .map(|(&y, p)| p.act(g, y))
            .collect();
        FiniteRing::product_index(&sizes, &out)
    }))
}

/// An equivariant ring homomorphism `r → s`, if one exists.
pub fn gring_homomorphism(r: &GRing, s: &GRing, budget: u64) -> Result<Option<RingHom>> {
    check_same_group(r, s)?;
    Ok(
        search::find_homomorphism(&r.structure(), &s.structure(), budget)?
            .map(|m| to_hom(r, s, &m[0])),
    )
}

/// All equivariant ring homomorphisms `r → s`.
pub fn gring_homomorphisms(r: &GRing, s: &GRing, budget: u64) -> Result<Vec<RingHom>> {
    check_same_group(r, s)?;
    let config = search::SearchConfig {
        budget,
        injective: false,
        mode: search::Mode::All,
    };
    Ok(
        search::homomorphisms(&r.structure(), &s.structure(), config)?
            .iter()
            .map(|m| to_hom(r, s, &m[0]))
            .collect(),
    )
}

/// An equivariant ring isomorphism `r → s`, if one exists.
pub fn gring_isomorphism(r: &GRing, s: &GRing, budget: u64) -> Result<Option<RingHom>> {
    check_same_group(r, s)?;
    Ok(
        search::find_isomorphism(&r.structure(), &s.structure(), budget)?
            .map(|m| to_hom(r, s, &m[0])),
    )
}

fn check_same_group(r: &GRing, s: &GRing) -> Result<()> {
    if r.acting != s.acting || *r.group != *s.group {
        return Err(Error::GroupMismatch("G-rings over different groups".into()));
    }
    Ok(())
}

fn to_hom(r: &GRing, s: &GRing, m: &[u32]) -> RingHom {
    RingHom {
        source: Arc::clone(&r.ring),
        target: Arc::clone(&s.ring),
        images: m.iter().map(|&y| y as usize).collect(),
    }
}

/// `R ≅ ∏_C Coind_C R_C` with one clarified factor per conjugacy class of
/// stabilizers of primitive idempotents.
#[derive(Clone, Debug)]
pub struct GRingDecomposition {
    /// `(C, R_C)` with `C` the least subgroup of its class, sorted by `C`.
    pub factors: Vec<(SubgroupId, GRing)>,
    /// For each factor, the fixed idempotent of `R` cutting out its coinduction.
    pub class_idempotents: Vec<usize>,
    /// For each factor, the idempotents `e_O` of `R` whose sum is the unit of `R_C`.
    pub chosen_idempotents: Vec<Vec<usize>>,
    /// `∏_C Coind_C R_C`.
    pub reassembled: GRing,
    /// Equivariant ring isomorphism `reassembled → R`.
    pub witness: Vec<usize>,
}

pub fn decompose_gring(r: &GRing) -> Result<GRingDecomposition> {
    let ring = &r.ring;
    let group = &r.group;
    let base = r.acting;
    let prims = ring.primitive_idempotents()?;
    // orbits of the acting group on the primitive idempotents, in order of least member
    let mut orbit_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for &e in &prims {
        if orbit_of.contains_key(&e) {
            continue;
        }
        let mut o: Vec<usize> = group
            .subgroup(base)
            .elements()
            .iter()
            .map(|&g| r.act(g, e))
            .collect();
        o.sort_unstable();
        o.dedup();
        for &x in &o {
            orbit_of.insert(x, orbits.len());
        }
        orbits.push(o);
    }
    let mut classes: BTreeMap<SubgroupId, Vec<usize>> = BTreeMap::new();
    for (i, o) in orbits.iter().enumerate() {
        let c = group.class_rep_in(base, r.isotropy(o[0]));
        classes.entry(c).or_default().push(i);
    }
    let mut factors = Vec::new();
    let mut class_idempotents = Vec::new();
    let mut chosen_idempotents = Vec::new();
    let mut coinductions = Vec::new();
    let mut embeddings: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (&c, orbit_ids) in &classes {
        let chosen: Vec<usize> = orbit_ids
            .iter()
            .map(|&i| {
                *orbits[i]
                    .iter()
                    .find(|&&e| r.isotropy(e) == c)
                    .expect("every orbit meets each stabilizer in its class")
            })
            .collect();
        let e = ring.sum(chosen.iter().copied());
        let big_e = ring.sum(orbit_ids.iter().flat_map(|&i| orbits[i].iter().copied()));
        let (corner, emb) = ring.corner(e)?;
        let mut pos = vec![usize::MAX; ring.size()];
        for (i, &x) in emb.iter().enumerate() {
            pos[x] = i;
        }
        let corner = Arc::new(corner.with_label(format!("R_{}", group.label(c))));
        let factor = GRing::from_fn(Arc::clone(&corner), group, c, |g, x| pos[r.act(g, emb[x])]);
        let coind = coinduce_gring(&factor, base)?;
        factors.push((c, factor));
        class_idempotents.push(big_e);
        chosen_idempotents.push(chosen);
        coinductions.push(coind);
        embeddings.push((group.coset_reps(base, c), emb));
    }
    let refs: Vec<&GRing> = coinductions.iter().collect();
    let reassembled = gring_product(&refs)?;
    let outer: Vec<usize> = coinductions.iter().map(|c| c.ring.size()).collect();
    let witness: Vec<usize> = reassembled
        .ring
        .elements()
        .map(|x| {
            let comps = FiniteRing::product_parts(&outer, x);
            ring.sum(comps.iter().zip(&embeddings).zip(&factors).flat_map(
                |((&y, (reps, emb)), (_, f))| {
                    let inner = vec![f.ring.size(); reps.len()];
                    let vals = FiniteRing::product_parts(&inner, y);
                    reps.iter()
                        .zip(vals)
                        .map(|(&g, v)| r.act(g, emb[v]))
                        .collect::<Vec<_>>()
                },
            ))
        })
        .collect();
    reassembled.verify_hom(r, &witness)?;
    let hom = RingHom {
        source: Arc::clone(&reassembled.ring),
        target: Arc::clone(ring),
        images: witness.clone(),
    };
    if !hom.is_bijective() {
        return Err(Error::VerificationFailed(
            "reassembled G-ring is not isomorphic to the input".into(),
        ));
    }
    Ok(GRingDecomposition {
        factors,
        class_idempotents,
        chosen_idempotents,
        reassembled,
        witness,
    })
}
