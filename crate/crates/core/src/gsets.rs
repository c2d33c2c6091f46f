//! Finite G-sets as action tables, equivariant maps, orbit decompositions,
//! pullbacks and the dependent product `Π_f A` with its exponential diagram.
//!
//! A [`GSet`] is acted on by a subgroup `acting` of an ambient [`FiniteGroup`];
//! this lets `H`-sets for `H ⊆ G` share subgroup ids with the ambient group.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, SubgroupId};

/// Default cap on the number of points of a dependent product.
pub const DEFAULT_SECTION_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    acting: SubgroupId,
    size: usize,
    /// Row `i` is the permutation of the `i`-th element of `acting`.
    action: Vec<usize>,
}

impl GSet {
    /// `rows[i]` is the permutation induced by the `i`-th element of `acting`.
    pub fn new(
        group: &Arc<FiniteGroup>,
        acting: SubgroupId,
        size: usize,
        rows: &[Vec<usize>],
    ) -> Result<Self> {
        let elems = group.subgroup(acting).elements();
        if rows.len() != elems.len() {
            return Err(Error::invalid(format!(
                "action needs {} rows, got {}",
                elems.len(),
                rows.len()
            )));
        }
        let mut action = Vec::with_capacity(elems.len() * size);
        for row in rows {
            if row.len() != size || row.iter().any(|&x| x >= size) {
                return Err(Error::invalid(
                    "action row has wrong length or out-of-range entry",
                ));
            }
            let mut seen = vec![false; size];
            for &x in row {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::invalid("action row is not a bijection"));
                }
            }
            action.extend_from_slice(row);
        }
        let set = GSet {
            group: Arc::clone(group),
            acting,
            size,
            action,
        };
        for x in 0..size {
            if set.act(0, x) != x {
                return Err(Error::invalid("identity does not act trivially"));
            }
        }
        for &g in elems {
            for &h in elems {
                let gh = group.mul(g, h);
                for x in 0..size {
                    if set.act(gh, x) != set.act(g, set.act(h, x)) {
                        return Err(Error::invalid("action is not a homomorphism"));
                    }
                }
            }
        }
        Ok(set)
    }

    fn from_fn(
        group: &Arc<FiniteGroup>,
        acting: SubgroupId,
        size: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut action = Vec::with_capacity(group.subgroup(acting).order() * size);
        for &g in group.subgroup(acting).elements() {
            for x in 0..size {
                action.push(f(g, x));
            }
        }
        GSet {
            group: Arc::clone(group),
            acting,
            size,
            action,
        }
    }

    /// The coset space `acting/h`, points ordered by minimal coset element.
    pub fn cosets(group: &Arc<FiniteGroup>, acting: SubgroupId, h: SubgroupId) -> Self {
        let cosets = group.left_cosets(acting, h);
        let mut which = vec![usize::MAX; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                which[x] = i;
            }
        }
        GSet::from_fn(group, acting, cosets.len(), |g, i| {
            which[group.mul(g, cosets[i][0])]
        })
    }

    /// `n` points with trivial action.
    pub fn trivial(group: &Arc<FiniteGroup>, acting: SubgroupId, n: usize) -> Self {
        GSet::from_fn(group, acting, n, |_, x| x)
    }

    pub fn empty(group: &Arc<FiniteGroup>, acting: SubgroupId) -> Self {
        GSet::trivial(group, acting, 0)
    }

    pub fn disjoint_union(parts: &[&GSet]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::invalid("empty disjoint union"))?;
        let mut offsets = Vec::new();
        let mut size = 0;
        for p in parts {
            if p.acting != first.acting || *p.group != *first.group {
                return Err(Error::GroupMismatch(
                    "disjoint union of sets for different groups".into(),
                ));
            }
            offsets.push(size);
            size += p.size;
        }
        let mut owner = Vec::with_capacity(size);
        for (i, p) in parts.iter().enumerate() {
            owner.extend(std::iter::repeat_n(i, p.size));
        }
        Ok(GSet::from_fn(&first.group, first.acting, size, |g, x| {
            let i = owner[x];
            offsets[i] + parts[i].act(g, x - offsets[i])
        }))
    }

    /// Restriction of the action to a subgroup of `acting`.
    pub fn restrict(&self, sub: SubgroupId) -> Self {
        assert!(self.group.is_subgroup(sub, self.acting));
        GSet::from_fn(&self.group, sub, self.size, |g, x| self.act(g, x))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn acting(&self) -> SubgroupId {
        self.acting
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Action of the ambient element `g`, which must lie in `acting`.
    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        let row = self
            .group
            .subgroup(self.acting)
            .position(g)
            .expect("element does not lie in the acting subgroup");
        self.action[row * self.size + x]
    }

    /// The rows of the action table, one per element of `acting`.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        if self.size == 0 {
            return vec![Vec::new(); self.group.subgroup(self.acting).order()];
        }
        self.action
            .chunks(self.size)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn stabilizer(&self, x: usize) -> SubgroupId {
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
            .expect("stabilizer is a subgroup")
    }

    pub fn orbits(&self) -> Orbits {
        let elems = self.group.subgroup(self.acting).elements();
        let mut orbit_of = vec![usize::MAX; self.size];
        let mut transporter = vec![usize::MAX; self.size];
        let mut orbits = Vec::new();
        for x in 0..self.size {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let idx = orbits.len();
            let mut points = Vec::new();
            for &g in elems {
                let y = self.act(g, x);
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = idx;
                    transporter[y] = g;
                    points.push(y);
                }
            }
            points.sort_unstable();
            let stabilizer = self.stabilizer(x);
            let coset_points = self
                .group
                .coset_reps(self.acting, stabilizer)
                .into_iter()
                .map(|r| self.act(r, x))
                .collect();
            orbits.push(Orbit {
                points,
                base: x,
                stabilizer,
                coset_points,
            });
        }
        Orbits {
            orbits,
            orbit_of,
            transporter,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted points of the orbit.
    pub points: Vec<usize>,
    /// Minimal point, used as base point.
    pub base: usize,
    /// Stabilizer of the base point.
    pub stabilizer: SubgroupId,
    /// Equivariant bijection `acting/stabilizer → orbit`: the `i`-th coset (canonical
    /// order) goes to `coset_points[i]`.
    pub coset_points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    pub orbits: Vec<Orbit>,
    pub orbit_of: Vec<usize>,
    /// For each point `x`, the least group element `g` with `g·base = x`.
    pub transporter: Vec<usize>,
}

/// An equivariant map of G-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSetMap {
    pub source: Arc<GSet>,
    pub target: Arc<GSet>,
    pub images: Vec<usize>,
}

impl GSetMap {
    pub fn new(source: Arc<GSet>, target: Arc<GSet>, images: Vec<usize>) -> Result<Self> {
        if source.acting != target.acting || *source.group != *target.group {
            return Err(Error::GroupMismatch(
                "map between sets for different groups".into(),
            ));
        }
        if images.len() != source.size || images.iter().any(|&y| y >= target.size) {
            return Err(Error::invalid(
                "map table has wrong length or out-of-range entry",
            ));
        }
        for &g in source.group.subgroup(source.acting).elements() {
            for x in 0..source.size {
                if images[source.act(g, x)] != target.act(g, images[x]) {
                    return Err(Error::invalid(format!(
                        "map is not equivariant at point {x}"
                    )));
                }
            }
        }
        Ok(GSetMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(x: &Arc<GSet>) -> Self {
        GSetMap {
            source: Arc::clone(x),
            target: Arc::clone(x),
            images: (0..x.size).collect(),
        }
    }

    /// Canonical projection `acting/k → acting/h` for `k ⊆ h`.
    pub fn projection(
        group: &Arc<FiniteGroup>,
        acting: SubgroupId,
        k: SubgroupId,
        h: SubgroupId,
    ) -> Self {
        assert!(group.is_subgroup(k, h));
        let source = Arc::new(GSet::cosets(group, acting, k));
        let target = Arc::new(GSet::cosets(group, acting, h));
        let target_cosets = group.left_cosets(acting, h);
        let mut which = vec![usize::MAX; group.order()];
        for (i, c) in target_cosets.iter().enumerate() {
            for &x in c {
                which[x] = i;
            }
        }
        let images = group
            .coset_reps(acting, k)
            .into_iter()
            .map(|r| which[r])
            .collect();
        GSetMap {
            source,
            target,
            images,
        }
    }

    /// Fold map `X ⊔ X → X`.
    pub fn fold(x: &Arc<GSet>) -> Self {
        let source = Arc::new(GSet::disjoint_union(&[x, x]).expect("same group"));
        let images = (0..2 * x.size).map(|i| i % x.size).collect();
        GSetMap {
            source,
            target: Arc::clone(x),
            images,
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GSetMap) -> GSetMap {
        assert_eq!(self.target.size, next.source.size);
        GSetMap {
            source: Arc::clone(&self.source),
            target: Arc::clone(&next.target),
            images: self.images.iter().map(|&y| next.images[y]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.size];
        self.images.len() == self.target.size
            && self
                .images
                .iter()
                .all(|&y| !std::mem::replace(&mut seen[y], true))
    }
}

/// A pullback `X ×_Y Z` with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub set: Arc<GSet>,
    /// The pairs `(x, z)` in point order.
    pub pairs: Vec<(usize, usize)>,
    pub to_left: GSetMap,
    pub to_right: GSetMap,
}

pub fn pullback(f: &GSetMap, g: &GSetMap) -> Result<Pullback> {
    if f.target.size != g.target.size || *f.target != *g.target {
        return Err(Error::invalid("pullback of maps with different targets"));
    }
    let pairs: Vec<(usize, usize)> = (0..f.source.size)
        .flat_map(|x| (0..g.source.size).map(move |z| (x, z)))
        .filter(|&(x, z)| f.images[x] == g.images[z])
        .collect();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let group = &f.source.group;
    let set = Arc::new(GSet::from_fn(
        group,
        f.source.acting,
        pairs.len(),
        |h, i| {
            let (x, z) = pairs[i];
            index[&(f.source.act(h, x), g.source.act(h, z))]
        },
    ));
    let to_left = GSetMap {
        source: Arc::clone(&set),
        target: Arc::clone(&f.source),
        images: pairs.iter().map(|p| p.0).collect(),
    };
    let to_right = GSetMap {
        source: Arc::clone(&set),
        target: Arc::clone(&g.source),
        images: pairs.iter().map(|p| p.1).collect(),
    };
    Ok(Pullback {
        set,
        pairs,
        to_left,
        to_right,
    })
}

/// The exponential diagram
///
/// ```text
/// X <--p-- A <--evaluation-- X ×_Y Π_f A
/// |                              |
/// f                      corner_projection
/// v                              v
/// Y <-------projection------- Π_f A
/// ```
#[derive(Clone, Debug)]
pub struct ExponentialDiagram {
    pub f: GSetMap,
    pub p: GSetMap,
    pub pi: Arc<GSet>,
    /// Point `i` of `pi` is the pair `(y, σ)`; `σ` lists the images of the fiber
    /// `f⁻¹(y)` in increasing point order.
    pub sections: Vec<(usize, Vec<usize>)>,
    pub projection: GSetMap,
    pub pullback_corner: Arc<GSet>,
    pub evaluation: GSetMap,
    pub corner_projection: GSetMap,
    pub corner_to_source: GSetMap,
}

/// Builds `Π_f A` for `f: X → Y` and `p: A → X` from the section-set definition.
pub fn dependent_product(f: &GSetMap, p: &GSetMap, cap: usize) -> Result<ExponentialDiagram> {
    if p.target.size != f.source.size || *p.target != *f.source {
        return Err(Error::invalid("p must target the source of f"));
    }
    let x_set = &f.source;
    let a_set = &p.source;
    let y_size = f.target.size;
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); y_size];
    for x in 0..x_set.size {
        fibers[f.images[x]].push(x);
    }
    let mut over: Vec<Vec<usize>> = vec![Vec::new(); x_set.size];
    for a in 0..a_set.size {
        over[p.images[a]].push(a);
    }
    let mut count = 0usize;
    for fiber in &fibers {
        let mut c = 1usize;
        for &x in fiber {
            c = c.saturating_mul(over[x].len());
        }
        count = count.saturating_add(c);
    }
    if count > cap {
        return Err(Error::Unsupported(format!(
            "dependent product has {count} points, above the cap of {cap}"
        )));
    }
    let mut sections: Vec<(usize, Vec<usize>)> = Vec::with_capacity(count);
    for (y, fiber) in fibers.iter().enumerate() {
        if fiber.iter().any(|&x| over[x].is_empty()) {
            continue;
        }
        let mut choice = vec![0usize; fiber.len()];
        loop {
            sections.push((
                y,
                fiber
                    .iter()
                    .zip(&choice)
                    .map(|(&x, &c)| over[x][c])
                    .collect(),
            ));
            let mut i = fiber.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < over[fiber[i]].len() {
                    break;
                }
                choice[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX || fiber.is_empty() {
                break;
            }
        }
    }
    debug_assert_eq!(sections.len(), count);
    let index: HashMap<(usize, Vec<usize>), usize> = sections
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let position_in_fiber: Vec<usize> = {
        let mut pos = vec![0; x_set.size];
        for fiber in &fibers {
            for (i, &x) in fiber.iter().enumerate() {
                pos[x] = i;
            }
        }
        pos
    };
    let group = &x_set.group;
    let acting = x_set.acting;
    // (gσ)(x') = g·σ(g⁻¹x') on the fiber over g·y
    let pi = Arc::new(GSet::from_fn(group, acting, sections.len(), |g, i| {
        let (y, sigma) = &sections[i];
        let gy = f.target.act(g, *y);
        let gi = group.inv(g);
        let new_sigma: Vec<usize> = fibers[gy]
            .iter()
            .map(|&x2| {
                let x = x_set.act(gi, x2);
                a_set.act(g, sigma[position_in_fiber[x]])
            })
            .collect();
        index[&(gy, new_sigma)]
    }));
    let projection = GSetMap {
        source: Arc::clone(&pi),
        target: Arc::clone(&f.target),
        images: sections.iter().map(|s| s.0).collect(),
    };
    let corner = pullback(f, &projection)?;
    let evaluation = GSetMap {
        source: Arc::clone(&corner.set),
        target: Arc::clone(a_set),
        images: corner
            .pairs
            .iter()
            .map(|&(x, s)| sections[s].1[position_in_fiber[x]])
            .collect(),
    };
    let diagram = ExponentialDiagram {
        f: f.clone(),
        p: p.clone(),
        pi,
        sections,
        projection,
        pullback_corner: Arc::clone(&corner.set),
        evaluation,
        corner_projection: corner.to_right,
        corner_to_source: corner.to_left,
    };
    for c in 0..diagram.pullback_corner.size {
        if p.images[diagram.evaluation.images[c]] != diagram.corner_to_source.images[c] {
            return Err(Error::VerificationFailed(
                "exponential diagram does not commute".into(),
            ));
        }
    }
    Ok(diagram)
}

/// An equivariant bijection `X → Y`, if one exists, found by matching orbits
/// with conjugate stabilizers.
pub fn gset_isomorphism(x: &Arc<GSet>, y: &Arc<GSet>) -> Option<GSetMap> {
    if x.size != y.size || x.acting != y.acting || *x.group != *y.group {
        return None;
    }
    let group = &x.group;
    let ox = x.orbits();
    let oy = y.orbits();
    let mut used = vec![false; oy.orbits.len()];
    let mut images = vec![usize::MAX; x.size];
    for orbit in &ox.orbits {
        let (j, shift) = oy.orbits.iter().enumerate().find_map(|(j, o)| {
            if used[j] || o.points.len() != orbit.points.len() {
                return None;
            }
            group
                .conjugator_in(x.acting, o.stabilizer, orbit.stabilizer)
                .map(|g| (j, g))
        })?;
        used[j] = true;
        // base ↦ shift·base_y, which has stabilizer exactly orbit.stabilizer
        let target_base = y.act(shift, oy.orbits[j].base);
        for &pt in &orbit.points {
            let g = ox.transporter[pt];
            images[pt] = y.act(g, target_base);
        }
    }
    GSetMap::new(Arc::clone(x), Arc::clone(y), images).ok()
}
