//! Structure maps along arbitrary maps of finite G-sets.
//!
//! `T(X)` for `X = ⊔ G/H_i` is `∏ level(H_i)`, one component per orbit in the
//! canonical orbit order. A map of G-sets factors orbit by orbit into a
//! conjugation followed by a restriction, transfer or norm along an inclusion.

use crate::error::{Error, Result};
use crate::groups::SubgroupId;
use crate::gsets::GSetMap;

use super::TambaraData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapKind {
    Res,
    Tr,
    Nm,
}

/// `outer(c_g(v[src]))`: for `Res`, `outer = Res^via_to`; for `Tr`/`Nm`,
/// `outer = Tr^to_via` or `Nm^to_via`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Term {
    src: usize,
    g: usize,
    from: SubgroupId,
    via: SubgroupId,
    to: SubgroupId,
}

/// A precomputed structure map `T(X) → T(Y)` (or `T(Y) → T(X)` for `Res`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMap {
    pub kind: MapKind,
    pub source_levels: Vec<SubgroupId>,
    pub target_levels: Vec<SubgroupId>,
    terms: Vec<Vec<Term>>,
}

impl LevelMap {
    pub fn apply(&self, t: &TambaraData, v: &[usize]) -> Vec<usize> {
        debug_assert_eq!(v.len(), self.source_levels.len());
        self.terms
            .iter()
            .zip(&self.target_levels)
            .map(|(terms, &level)| {
                let ring = t.level(level);
                let value = |term: &Term| t.conj(term.g, term.from, v[term.src]);
                match self.kind {
                    MapKind::Res => {
                        let term = &terms[0];
                        t.res(term.to, term.via, value(term))
                    }
                    MapKind::Tr => ring.sum(
                        terms
                            .iter()
                            .map(|term| t.tr(term.via, term.to, value(term))),
                    ),
                    MapKind::Nm => ring.product_of(
                        terms
                            .iter()
                            .map(|term| t.nm(term.via, term.to, value(term))),
                    ),
                }
            })
            .collect()
    }

    /// Number of components of the source.
    pub fn source_len(&self) -> usize {
        self.source_levels.len()
    }
}

impl TambaraData {
    /// The map induced by `f: X → Y`: `Res_f: T(Y) → T(X)`, `Tr_f, Nm_f: T(X) → T(Y)`.
    pub fn eval_along(&self, f: &GSetMap, kind: MapKind) -> Result<LevelMap> {
        let group = &self.group;
        if f.source.acting() != self.base || **f.source.group() != **group {
            return Err(Error::GroupMismatch(
                "map of G-sets for a different group".into(),
            ));
        }
        if kind == MapKind::Nm && !self.has_norms {
            return Err(Error::NoNorms);
        }
        let ox = f.source.orbits();
        let oy = f.target.orbits();
        let x_levels: Vec<SubgroupId> = ox.orbits.iter().map(|o| o.stabilizer).collect();
        let y_levels: Vec<SubgroupId> = oy.orbits.iter().map(|o| o.stabilizer).collect();
        match kind {
            MapKind::Res => {
                let terms = ox
                    .orbits
                    .iter()
                    .map(|o| {
                        let image = f.images[o.base];
                        let j = oy.orbit_of[image];
                        vec![Term {
                            src: j,
                            g: oy.transporter[image],
                            from: y_levels[j],
                            via: f.target.stabilizer(image),
                            to: o.stabilizer,
                        }]
                    })
                    .collect();
                Ok(LevelMap {
                    kind,
                    source_levels: y_levels,
                    target_levels: x_levels,
                    terms,
                })
            }
            MapKind::Tr | MapKind::Nm => {
                let terms = oy
                    .orbits
                    .iter()
                    .map(|o| {
                        let s = group.subgroup(o.stabilizer);
                        let fiber: Vec<usize> = (0..f.source.size())
                            .filter(|&x| f.images[x] == o.base)
                            .collect();
                        let mut seen = vec![false; f.source.size()];
                        let mut terms = Vec::new();
                        for &x in &fiber {
                            if seen[x] {
                                continue;
                            }
                            for &h in s.elements() {
                                seen[f.source.act(h, x)] = true;
                            }
                            let i = ox.orbit_of[x];
                            terms.push(Term {
                                src: i,
                                g: ox.transporter[x],
                                from: x_levels[i],
                                via: f.source.stabilizer(x),
                                to: o.stabilizer,
                            });
                        }
                        terms
                    })
                    .collect();
                Ok(LevelMap {
                    kind,
                    source_levels: x_levels,
                    target_levels: y_levels,
                    terms,
                })
            }
        }
    }
}
