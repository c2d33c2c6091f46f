//! JSON definition files (schema 1).
//!
//! ```json
//! {
//!   "schema": 1,
//!   "group": {"name": "C2", "table": [[0, 1], [1, 0]]},
//!   "functor": {"fp": {"ring": {"kind": "Fq", "q": 4}, "action": [[0, 1, 2, 3], [0, 1, 3, 2]]}}
//! }
//! ```
//!
//! Subgroup ids are `e`, `G`, a canonical index or a label such as `C2.1`.
//! Explicit functors list `levels`, `res`/`tr`/`nm` keyed by `"K:H"`, and
//! `conj` keyed by `"g@H"`. Written files always use the explicit form with
//! map keys in sorted order, so output is byte-stable.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::decompose::DecompositionResult;
use crate::error::{Error, Result};
use crate::functors::{
    burnside_mod, coinduce, fixed_point_functor, green_counterexample_over, TambaraBuilder,
    TambaraData, TambaraMorphism,
};
use crate::groups::{upward_closure, FiniteGroup, SubgroupId, UpwardClosedSet};
use crate::rings::{FiniteRing, GRing};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum RingDef {
    #[serde(rename = "tables")]
    Tables {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    Zn {
        n: usize,
    },
    Fq {
        q: usize,
    },
    #[serde(rename = "product")]
    Product {
        factors: Vec<RingDef>,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    /// Generating permutations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
    /// `Cn`, `V4`, `Sn`, `D2n` or `Q8`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GRingDef {
    pub ring: RingDef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acting: Option<String>,
    /// One permutation of the ring elements per element of the acting subgroup;
    /// omitted means the trivial action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BurnsideDef {
    #[serde(rename = "mod")]
    pub modulus: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoindDef {
    pub from: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<String>,
    pub functor: Box<FunctorDef>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictDef {
    pub to: String,
    pub functor: Box<FunctorDef>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GreenExampleDef {
    pub ring: RingDef,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub green_only: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub levels: BTreeMap<String, RingDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub res: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tr: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nm: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub conj: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fp: Option<GRingDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub burnside: Option<BurnsideDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coind: Option<CoindDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrict: Option<RestrictDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<FunctorDef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub green_example: Option<GreenExampleDef>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema: u64,
    pub group: GroupDef,
    pub functor: FunctorDef,
    /// Witness tables attached by commands that produce derived functors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

pub fn build_group(def: &GroupDef) -> Result<FiniteGroup> {
    let name = def.name.clone();
    match (&def.table, &def.permutations, &def.named) {
        (Some(t), None, None) => {
            FiniteGroup::from_table(name.unwrap_or_else(|| format!("G{}", t.len())), t)
        }
        (None, Some(p), None) => {
            FiniteGroup::from_permutations(name.unwrap_or_else(|| "G".into()), p)
        }
        (None, None, Some(n)) => named_group(n),
        _ => Err(Error::invalid(
            "a group needs exactly one of `table`, `permutations` or `named`",
        )),
    }
}

fn named_group(name: &str) -> Result<FiniteGroup> {
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::invalid(format!("unknown group `{name}`")))
    };
    let g = match name {
        "V4" => FiniteGroup::klein(),
        "Q8" => FiniteGroup::quaternion(),
        _ if name.starts_with('C') => FiniteGroup::cyclic(num(&name[1..])?),
        _ if name.starts_with('S') => FiniteGroup::symmetric(num(&name[1..])?),
        _ if name.starts_with('D') => {
            let n = num(&name[1..])?;
            if n < 4 || n % 2 == 1 {
                return Err(Error::invalid(format!(
                    "dihedral groups are named D2n, got `{name}`"
                )));
            }
            FiniteGroup::dihedral(n / 2)
        }
        _ => return Err(Error::invalid(format!("unknown group `{name}`"))),
    };
    if g.order() == 0 || g.order() > crate::groups::MAX_GROUP_ORDER {
        return Err(Error::Unsupported(format!("group `{name}` is too large")));
    }
    Ok(g)
}

pub fn build_ring(def: &RingDef) -> Result<FiniteRing> {
    match def {
        RingDef::Tables {
            label,
            add,
            mul,
            names,
        } => {
            let r = FiniteRing::from_tables(
                label.clone().unwrap_or_else(|| format!("R{}", add.len())),
                add,
                mul,
            )?;
            match names {
                Some(n) => r.with_names(n.clone()),
                None => Ok(r),
            }
        }
        RingDef::Zn { n } => FiniteRing::zn(*n),
        RingDef::Fq { q } => FiniteRing::field(*q),
        RingDef::Product { factors } => {
            let rings: Vec<FiniteRing> = factors.iter().map(build_ring).collect::<Result<_>>()?;
            FiniteRing::product(&rings.iter().collect::<Vec<_>>())
        }
    }
}

pub fn ring_def(r: &FiniteRing) -> RingDef {
    RingDef::Tables {
        label: Some(r.label().to_string()),
        add: r.add_table(),
        mul: r.mul_table(),
        names: r.names().map(|n| n.to_vec()),
    }
}

pub fn build_gring(group: &Arc<FiniteGroup>, base: SubgroupId, def: &GRingDef) -> Result<GRing> {
    let ring = Arc::new(build_ring(&def.ring)?);
    let acting = match &def.acting {
        Some(id) => group.resolve(id)?,
        None => base,
    };
    match &def.action {
        Some(rows) => GRing::new(ring, group, acting, rows),
        None => Ok(GRing::trivial(ring, group, acting)),
    }
}

fn edge(group: &FiniteGroup, key: &str) -> Result<(SubgroupId, SubgroupId)> {
    let (k, h) = key
        .split_once(':')
        .ok_or_else(|| Error::invalid(format!("edge `{key}` is not of the form K:H")))?;
    Ok((group.resolve(k)?, group.resolve(h)?))
}

fn conj_key(group: &FiniteGroup, key: &str) -> Result<(usize, SubgroupId)> {
    let (g, h) = key
        .split_once('@')
        .ok_or_else(|| Error::invalid(format!("conjugation key `{key}` is not of the form g@H")))?;
    let g: usize = g
        .trim()
        .parse()
        .map_err(|_| Error::invalid(format!("`{g}` is not a group element index")))?;
    if g >= group.order() {
        return Err(Error::invalid(format!("group element {g} out of range")));
    }
    Ok((g, group.resolve(h)?))
}

/// Builds the functor described by `def` over the ambient `group`.
pub fn build_functor(group: &Arc<FiniteGroup>, def: &FunctorDef) -> Result<TambaraData> {
    let base = match &def.base {
        Some(id) => group.resolve(id)?,
        None => group.whole(),
    };
    let shorthand = [
        def.fp.is_some(),
        def.burnside.is_some(),
        def.coind.is_some(),
        def.restrict.is_some(),
        def.product.is_some(),
        def.green_example.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    let explicit = !def.levels.is_empty();
    if shorthand + explicit as usize != 1 {
        return Err(Error::invalid(
            "a functor block needs exactly one of `levels`, `fp`, `burnside`, `coind`, `restrict`, `product` or `green_example`",
        ));
    }
    let t = if let Some(g) = &def.fp {
        fixed_point_functor(&build_gring(group, base, g)?)
    } else if let Some(b) = &def.burnside {
        if base != group.whole() {
            return Err(Error::invalid(
                "Burnside functors are defined over the whole group",
            ));
        }
        burnside_mod(group, b.modulus)?.data
    } else if let Some(c) = &def.coind {
        let inner = build_functor(group, &c.functor)?;
        let from = group.resolve(&c.from)?;
        let inner = if inner.base() == from {
            inner
        } else {
            inner.restrict(from)?
        };
        let to = match &c.to {
            Some(id) => group.resolve(id)?,
            None => base,
        };
        coinduce(&inner, to)?
    } else if let Some(r) = &def.restrict {
        build_functor(group, &r.functor)?.restrict(group.resolve(&r.to)?)?
    } else if let Some(parts) = &def.product {
        let parts: Vec<TambaraData> = parts
            .iter()
            .map(|p| build_functor(group, p))
            .collect::<Result<_>>()?;
        TambaraData::product(&parts.iter().collect::<Vec<_>>())?
    } else if let Some(g) = &def.green_example {
        green_counterexample_over(group, &build_ring(&g.ring)?)?
    } else {
        let mut b = TambaraBuilder::new(group, base, !def.green_only);
        for (id, ring) in &def.levels {
            let h = group.resolve(id)?;
            if !group.is_subgroup(h, base) {
                return Err(Error::invalid(format!(
                    "level `{id}` is not a subgroup of the base"
                )));
            }
            b.level(h, Arc::new(build_ring(ring)?));
        }
        for (key, table) in &def.res {
            let (k, h) = edge(group, key)?;
            b.res(k, h, table.clone());
        }
        for (key, table) in &def.tr {
            let (k, h) = edge(group, key)?;
            b.tr(k, h, table.clone());
        }
        if def.green_only && !def.nm.is_empty() {
            return Err(Error::invalid("a Green functor cannot list norms"));
        }
        for (key, table) in &def.nm {
            let (k, h) = edge(group, key)?;
            b.nm(k, h, table.clone());
        }
        for (key, table) in &def.conj {
            let (g, h) = conj_key(group, key)?;
            b.conj(g, h, table.clone());
        }
        b.build()?
    };
    if t.base() != base && def.coind.is_none() && def.restrict.is_none() {
        return t.restrict(base);
    }
    Ok(t)
}

/// The explicit definition of `t`.
pub fn functor_def(t: &TambaraData) -> FunctorDef {
    let group = t.group();
    let widen = |table: &[u32]| table.iter().map(|&x| x as usize).collect::<Vec<_>>();
    let mut def = FunctorDef {
        base: (t.base() != group.whole()).then(|| group.label(t.base()).to_string()),
        green_only: !t.has_norms(),
        ..FunctorDef::default()
    };
    for h in t.subgroups() {
        def.levels
            .insert(group.label(h).to_string(), ring_def(t.level(h)));
        for &g in group.subgroup(t.base()).elements() {
            def.conj
                .insert(format!("{g}@{}", group.label(h)), widen(t.conj_table(g, h)));
        }
    }
    for (k, h) in t.inclusions() {
        if k == h {
            continue;
        }
        let key = format!("{}:{}", group.label(k), group.label(h));
        def.res.insert(key.clone(), widen(t.res_table(k, h)));
        def.tr.insert(key.clone(), widen(t.tr_table(k, h)));
        if t.has_norms() {
            def.nm.insert(key, widen(t.nm_table(k, h)));
        }
    }
    def
}

pub fn group_def(g: &FiniteGroup) -> GroupDef {
    GroupDef {
        name: Some(g.name().to_string()),
        table: Some(g.table()),
        ..GroupDef::default()
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| Error::invalid(format!("malformed definition: {e}")))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(Error::invalid(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            doc.schema
        )));
    }
    Ok(doc)
}

/// Parses a definition file into its functor.
pub fn parse_functor(text: &str) -> Result<TambaraData> {
    let doc = parse_document(text)?;
    let group = Arc::new(build_group(&doc.group)?);
    build_functor(&group, &doc.functor)
}

pub fn document(t: &TambaraData, witness: Option<Value>) -> Document {
    Document {
        schema: SCHEMA_VERSION,
        group: group_def(t.group()),
        functor: functor_def(t),
        witness,
    }
}

/// The family named by a `--lambda` argument: `all` for every subgroup of
/// the base, otherwise the upward closure of the named subgroup.
pub fn parse_lambda(t: &TambaraData, id: &str) -> Result<UpwardClosedSet> {
    let group = t.group();
    if id == "all" {
        return Ok(UpwardClosedSet::all(group, t.base()));
    }
    let h = group.resolve(id)?;
    if !group.is_subgroup(h, t.base()) {
        return Err(Error::invalid(format!(
            "{id} is not a subgroup of the base"
        )));
    }
    Ok(upward_closure(group, t.base(), h))
}

/// Indented JSON with arrays of scalars kept on one line and a trailing newline.
pub fn to_json(doc: &Document) -> String {
    let value = serde_json::to_value(doc).expect("definitions serialize");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&serde_json::to_string(x).expect("scalars serialize"));
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalars serialize")),
    }
}

pub fn functor_to_json(t: &TambaraData) -> String {
    to_json(&document(t, None))
}

fn morphism_tables(m: &TambaraMorphism) -> BTreeMap<String, Vec<usize>> {
    let group = m.source.group();
    m.source
        .subgroups()
        .into_iter()
        .map(|h| {
            (
                group.label(h).to_string(),
                m.table(h).iter().map(|&x| x as usize).collect(),
            )
        })
        .collect()
}

/// The reassembled product with the factors and the isomorphism to the input.
pub fn decomposition_document(dec: &DecompositionResult) -> Document {
    let group = dec.reassembled.group();
    let factors: Vec<Value> = dec
        .factors
        .iter()
        .map(|(h, f)| {
            serde_json::json!({
                "subgroup": group.label(*h),
                "functor": functor_def(f),
            })
        })
        .collect();
    let witness = serde_json::json!({
        "kind": "decomposition",
        "factors": factors,
        "map": morphism_tables(&dec.witness),
    });
    document(&dec.reassembled, Some(witness))
}

/// A clarification with its projection from the input.
pub fn clarification_document(
    quotient: &TambaraData,
    lambda: &UpwardClosedSet,
    projection: &TambaraMorphism,
) -> Document {
    let group = quotient.group();
    let members: Vec<&str> = lambda
        .members()
        .into_iter()
        .map(|h| group.label(h))
        .collect();
    let witness = serde_json::json!({
        "kind": "clarification",
        "lambda": members,
        "projection": morphism_tables(projection),
    });
    document(quotient, Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    const GALOIS: &str = r#"{
        "schema": 1,
        "group": {"named": "C2"},
        "functor": {"fp": {"ring": {"kind": "Fq", "q": 4}, "action": [[0, 1, 2, 3], [0, 1, 3, 2]]}}
    }"#;

    #[test]
    fn shorthand_round_trips_through_explicit_form() {
        let t = parse_functor(GALOIS).unwrap();
        let text = functor_to_json(&t);
        let back = parse_functor(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(functor_to_json(&back), text);
    }

    #[test]
    fn rejects_bad_schema_and_unknown_fields() {
        assert!(parse_functor(&GALOIS.replace("\"schema\": 1", "\"schema\": 2")).is_err());
        assert!(parse_functor(&GALOIS.replace("\"fp\"", "\"fixed\"")).is_err());
        assert!(parse_functor("{").is_err());
    }

    #[test]
    fn nested_shorthands() {
        let text = r#"{
            "schema": 1,
            "group": {"named": "S3"},
            "functor": {"coind": {"from": "C3", "functor": {"fp": {"ring": {"kind": "Zn", "n": 2}}}}}
        }"#;
        let t = parse_functor(text).unwrap();
        assert_eq!(t.bottom().size(), 4);
    }
}
