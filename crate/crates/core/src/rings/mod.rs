//! Explicit finite commutative rings given by addition and multiplication tables.

mod field;
mod gring;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::search::{self, Structure};

pub use field::{defining_polynomial, is_irreducible};
pub(crate) use gring::subgroup_generators;
pub use gring::{
    coinduce_gring, decompose_gring, gring_homomorphism, gring_homomorphisms, gring_isomorphism,
    gring_product, gring_restrict, GRing, GRingDecomposition, IdempotentReport,
};

/// Largest ring size accepted anywhere in the toolkit.
pub const MAX_RING_SIZE: usize = 4096;

#[derive(Clone)]
pub struct FiniteRing {
    label: String,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
    one: usize,
    names: Option<Vec<String>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.label, self.size)
    }
}

/// Rings compare by their tables; labels and names are ignored.
impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.add == other.add && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

fn table_to_flat(t: &[Vec<usize>], n: usize, what: &str) -> Result<Vec<u32>> {
    if t.len() != n || t.iter().any(|r| r.len() != n) {
        return Err(Error::invalid(format!("{what} table must be {n}×{n}")));
    }
    let mut out = Vec::with_capacity(n * n);
    for row in t {
        for &x in row {
            if x >= n {
                return Err(Error::invalid(format!(
                    "{what} table entry {x} out of range"
                )));
            }
            out.push(x as u32);
        }
    }
    Ok(out)
}

impl FiniteRing {
    /// Builds a ring from full tables. Zero and one are detected; the ring
    /// axioms are verified (associativity and distributivity through additive
    /// generators, which suffices once the maps involved are additive).
    pub fn from_tables(
        label: impl Into<String>,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
    ) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(Error::invalid("a ring needs at least one element"));
        }
        if n > MAX_RING_SIZE {
            return Err(Error::Unsupported(format!(
                "rings are limited to {MAX_RING_SIZE} elements"
            )));
        }
        let add = table_to_flat(add, n, "addition")?;
        let mul = table_to_flat(mul, n, "multiplication")?;
        Self::from_flat(label.into(), n, add, mul, None)
    }

    pub(crate) fn from_flat(
        label: String,
        n: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| add[z * n + x] as usize == x))
            .ok_or_else(|| Error::invalid("addition has no identity"))?;
        let one = (0..n)
            .find(|&u| (0..n).all(|x| mul[u * n + x] as usize == x))
            .ok_or_else(|| Error::invalid("multiplication has no identity"))?;
        let mut neg = vec![u32::MAX; n];
        for x in 0..n {
            for y in 0..n {
                if add[x * n + y] != add[y * n + x] {
                    return Err(Error::invalid("addition is not commutative"));
                }
                if mul[x * n + y] != mul[y * n + x] {
                    return Err(Error::invalid("multiplication is not commutative"));
                }
                if add[x * n + y] as usize == zero {
                    neg[x] = y as u32;
                }
            }
            if neg[x] == u32::MAX {
                return Err(Error::invalid(format!(
                    "element {x} has no additive inverse"
                )));
            }
        }
        let ring = FiniteRing {
            label,
            size: n,
            add,
            mul,
            neg,
            zero,
            one,
            names,
        };
        ring.verify_axioms()?;
        Ok(ring)
    }

    fn verify_axioms(&self) -> Result<()> {
        let n = self.size;
        let gens = self.additive_generators();
        // associativity of addition: Light's test over generators
        for &g in &gens {
            for x in 0..n {
                let xg = self.add(x, g);
                for y in 0..n {
                    if self.add(xg, y) != self.add(x, self.add(g, y)) {
                        return Err(Error::invalid("addition is not associative"));
                    }
                }
            }
        }
        // each multiplication map is additive
        for x in 0..n {
            for y in 0..n {
                for &g in &gens {
                    if self.mul(x, self.add(y, g)) != self.add(self.mul(x, y), self.mul(x, g)) {
                        return Err(Error::invalid(
                            "multiplication does not distribute over addition",
                        ));
                    }
                }
            }
        }
        // associativity is trilinear, so generators suffice
        for &a in &gens {
            for &b in &gens {
                for &c in &gens {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::invalid("multiplication is not associative"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The zero ring.
    pub fn zero_ring() -> Self {
        FiniteRing {
            label: "0".into(),
            size: 1,
            add: vec![0],
            mul: vec![0],
            neg: vec![0],
            zero: 0,
            one: 0,
            names: Some(vec!["0".into()]),
        }
    }

    /// `Z/n`.
    pub fn zn(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_RING_SIZE {
            return Err(Error::invalid(format!(
                "Z/{n} is not a supported finite ring"
            )));
        }
        if n == 1 {
            return Ok(Self::zero_ring());
        }
        let add = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let mul = (0..n * n).map(|i| ((i / n) * (i % n) % n) as u32).collect();
        let neg = (0..n).map(|x| ((n - x) % n) as u32).collect();
        Ok(FiniteRing {
            label: format!("Z/{n}"),
            size: n,
            add,
            mul,
            neg,
            zero: 0,
            one: 1,
            names: Some((0..n).map(|x| x.to_string()).collect()),
        })
    }

    /// The field with `q` elements.
    pub fn field(q: usize) -> Result<Self> {
        if q > MAX_RING_SIZE {
            return Err(Error::Unsupported(format!(
                "F_{q} exceeds the ring size limit"
            )));
        }
        let t = field::field_tables(q)?;
        let neg = (0..q)
            .map(|x| (0..q).find(|&y| t.add[x * q + y] == 0).unwrap() as u32)
            .collect();
        Ok(FiniteRing {
            label: format!("F{q}"),
            size: q,
            add: t.add,
            mul: t.mul,
            neg,
            zero: 0,
            one: 1,
            names: Some(t.names),
        })
    }

    /// Product ring. Elements are tuples in mixed radix, first factor most significant.
    pub fn product(factors: &[&FiniteRing]) -> Result<Self> {
        let size = factors.iter().try_fold(1usize, |acc, f| {
            acc.checked_mul(f.size).filter(|&s| s <= MAX_RING_SIZE)
        });
        let size = size.ok_or_else(|| {
            Error::Unsupported(format!("product exceeds {MAX_RING_SIZE} elements"))
        })?;
        let label = if factors.is_empty() {
            "0".to_string()
        } else {
            factors
                .iter()
                .map(|f| f.label.as_str())
                .collect::<Vec<_>>()
                .join("×")
        };
        if factors.is_empty() {
            return Ok(Self::zero_ring());
        }
        let decode = |mut x: usize| -> Vec<usize> {
            let mut parts = vec![0; factors.len()];
            for i in (0..factors.len()).rev() {
                parts[i] = x % factors[i].size;
                x /= factors[i].size;
            }
            parts
        };
        let encode = |parts: &[usize]| {
            parts
                .iter()
                .zip(factors)
                .fold(0, |acc, (&p, f)| acc * f.size + p)
        };
        let tuples: Vec<Vec<usize>> = (0..size).map(decode).collect();
        let mut add = vec![0u32; size * size];
        let mut mul = vec![0u32; size * size];
        let mut buf = vec![0; factors.len()];
        for x in 0..size {
            for y in 0..size {
                for (i, f) in factors.iter().enumerate() {
                    buf[i] = f.add(tuples[x][i], tuples[y][i]);
                }
                add[x * size + y] = encode(&buf) as u32;
                for (i, f) in factors.iter().enumerate() {
                    buf[i] = f.mul(tuples[x][i], tuples[y][i]);
                }
                mul[x * size + y] = encode(&buf) as u32;
            }
        }
        let neg = tuples
            .iter()
            .map(|t| {
                let parts: Vec<usize> = t.iter().zip(factors).map(|(&p, f)| f.neg(p)).collect();
                encode(&parts) as u32
            })
            .collect();
        let zero = encode(&factors.iter().map(|f| f.zero).collect::<Vec<_>>());
        let one = encode(&factors.iter().map(|f| f.one).collect::<Vec<_>>());
        let names = tuples
            .iter()
            .map(|t| {
                let parts: Vec<String> = t.iter().zip(factors).map(|(&p, f)| f.name(p)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Ok(FiniteRing {
            label,
            size,
            add,
            mul,
            neg,
            zero,
            one,
            names: Some(names),
        })
    }

    /// Encodes a tuple of factor elements as an element of [`FiniteRing::product`].
    pub fn product_index(factor_sizes: &[usize], parts: &[usize]) -> usize {
        parts
            .iter()
            .zip(factor_sizes)
            .fold(0, |acc, (&p, &n)| acc * n + p)
    }

    /// Inverse of [`FiniteRing::product_index`].
    pub fn product_parts(factor_sizes: &[usize], mut x: usize) -> Vec<usize> {
        let mut parts = vec![0; factor_sizes.len()];
        for i in (0..factor_sizes.len()).rev() {
            parts[i] = x % factor_sizes[i];
            x /= factor_sizes[i];
        }
        parts
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Display names for the elements, one per element.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::invalid(format!(
                "{} names for a ring of {} elements",
                names.len(),
                self.size
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> usize {
        self.one
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size == 1
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y] as usize
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn sum(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.zero, |a, b| self.add(a, b))
    }

    pub fn product_of(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.one, |a, b| self.mul(a, b))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, x))
    }

    /// `k·x`.
    pub fn scale(&self, k: usize, x: usize) -> usize {
        (0..k).fold(self.zero, |acc, _| self.add(acc, x))
    }

    /// `k·1`.
    pub fn from_integer(&self, k: i64) -> usize {
        let m = self.scale(k.unsigned_abs() as usize % self.characteristic(), self.one);
        if k < 0 {
            self.neg(m)
        } else {
            m
        }
    }

    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one)
    }

    pub fn additive_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.zero {
            y = self.add(y, x);
            k += 1;
        }
        k
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add
            .chunks(self.size)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul
            .chunks(self.size)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn is_unit(&self, x: usize) -> bool {
        (0..self.size).any(|y| self.mul(x, y) == self.one)
    }

    pub fn is_field(&self) -> bool {
        self.size > 1
            && (0..self.size)
                .filter(|&x| x != self.zero)
                .all(|x| self.is_unit(x))
    }

    /// Greedy generating set of the additive group.
    pub fn additive_generators(&self) -> Vec<usize> {
        let mut inside = vec![false; self.size];
        inside[self.zero] = true;
        let mut members = vec![self.zero];
        let mut gens = Vec::new();
        for x in 0..self.size {
            if !inside[x] {
                gens.push(x);
                self.extend_span(&mut inside, &mut members, x);
            }
        }
        gens
    }

    /// Greedy generating set of the multiplicative monoid.
    pub fn multiplicative_generators(&self) -> Vec<usize> {
        let mut inside = vec![false; self.size];
        inside[self.one] = true;
        let mut members = vec![self.one];
        let mut gens = Vec::new();
        for x in 0..self.size {
            if inside[x] {
                continue;
            }
            gens.push(x);
            let mut i = 0;
            while i < members.len() {
                for &g in &gens {
                    let y = self.mul(members[i], g);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                    }
                }
                i += 1;
            }
        }
        gens
    }

    /// Replaces the additive subgroup `members` by `members + ⟨x⟩`.
    fn extend_span(&self, inside: &mut [bool], members: &mut Vec<usize>, x: usize) {
        if inside[x] {
            return;
        }
        let current = members.clone();
        let mut m = x;
        while m != self.zero {
            for &s in &current {
                let t = self.add(s, m);
                if !inside[t] {
                    inside[t] = true;
                    members.push(t);
                }
            }
            m = self.add(m, x);
        }
    }

    /// All idempotents, sorted.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.mul(x, x) == x).collect()
    }

    /// The primitive idempotents: minimal nonzero idempotents. They are pairwise
    /// orthogonal and sum to one.
    pub fn primitive_idempotents(&self) -> Result<Vec<usize>> {
        if self.is_zero_ring() {
            return Err(Error::ZeroRing);
        }
        let nonzero: Vec<usize> = self
            .idempotents()
            .into_iter()
            .filter(|&e| e != self.zero)
            .collect();
        Ok(nonzero
            .iter()
            .copied()
            .filter(|&e| !nonzero.iter().any(|&f| f != e && self.mul(f, e) == f))
            .collect())
    }

    /// The corner ring `eR` for an idempotent `e`, with its inclusion into `R`.
    /// Elements of `eR` are ordered by their index in `R`.
    pub fn corner(&self, e: usize) -> Result<(FiniteRing, Vec<usize>)> {
        if self.mul(e, e) != e {
            return Err(Error::NotIdempotent(e));
        }
        let mut members: Vec<usize> = (0..self.size).map(|x| self.mul(e, x)).collect();
        members.sort_unstable();
        members.dedup();
        Ok((
            self.subring_on(&members, e, format!("{}·{}", self.name(e), self.label)),
            members,
        ))
    }

    /// Restricts the tables to `members`, which must be closed under the
    /// operations, with `one` as unit.
    fn subring_on(&self, members: &[usize], one: usize, label: String) -> FiniteRing {
        let mut pos = vec![u32::MAX; self.size];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i as u32;
        }
        let n = members.len();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for &x in members {
            for &y in members {
                add.push(pos[self.add(x, y)]);
                mul.push(pos[self.mul(x, y)]);
            }
        }
        FiniteRing {
            label,
            size: n,
            add,
            mul,
            neg: members.iter().map(|&x| pos[self.neg(x)]).collect(),
            zero: pos[self.zero] as usize,
            one: pos[one] as usize,
            names: Some(members.iter().map(|&x| self.name(x)).collect()),
        }
    }

    /// The subring on the given elements (must contain 0 and 1 and be closed).
    pub fn subring(&self, members: &[usize]) -> Result<(FiniteRing, Vec<usize>)> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut inside = vec![false; self.size];
        for &x in &members {
            inside[x] = true;
        }
        if !inside[self.zero] || !inside[self.one] {
            return Err(Error::invalid("subring must contain 0 and 1"));
        }
        for &x in &members {
            for &y in &members {
                if !inside[self.add(x, y)] || !inside[self.mul(x, y)] {
                    return Err(Error::invalid(
                        "subset is not closed under the ring operations",
                    ));
                }
            }
        }
        Ok((
            self.subring_on(&members, self.one, self.label.clone()),
            members,
        ))
    }

    /// Membership mask of the ideal generated by `gens`.
    pub fn ideal(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.size];
        inside[self.zero] = true;
        let mut members = vec![self.zero];
        for &g in gens {
            for r in 0..self.size {
                self.extend_span(&mut inside, &mut members, self.mul(r, g));
            }
        }
        inside
    }

    /// `R/I` for the ideal with membership mask `ideal`. Each class is
    /// represented by its least element; returns the quotient and the projection.
    pub fn quotient(&self, ideal: &[bool]) -> (FiniteRing, Vec<usize>) {
        let members: Vec<usize> = (0..self.size).filter(|&x| ideal[x]).collect();
        let mut class = vec![usize::MAX; self.size];
        let mut reps = Vec::new();
        for x in 0..self.size {
            if class[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &i in &members {
                class[self.add(x, i)] = c;
            }
        }
        let n = reps.len();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for &x in &reps {
            for &y in &reps {
                add.push(class[self.add(x, y)] as u32);
                mul.push(class[self.mul(x, y)] as u32);
            }
        }
        let q = FiniteRing {
            label: format!("{}/I", self.label),
            size: n,
            add,
            mul,
            neg: reps.iter().map(|&x| class[self.neg(x)] as u32).collect(),
            zero: class[self.zero],
            one: class[self.one],
            names: Some(reps.iter().map(|&x| self.name(x)).collect()),
        };
        (q, class)
    }

    /// The presentation used by the homomorphism search.
    pub(crate) fn structure(&self) -> Structure {
        let mut s = Structure::new(vec![self.size]);
        let add = s.binop(0, self.add.clone(), true);
        s.binop(0, self.mul.clone(), true);
        s.additive[0] = Some(add);
        s.constant(0, self.zero as u32);
        s.constant(0, self.one as u32);
        s
    }
}

/// A unital ring homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    pub source: Arc<FiniteRing>,
    pub target: Arc<FiniteRing>,
    pub images: Vec<usize>,
}

impl RingHom {
    pub fn new(
        source: Arc<FiniteRing>,
        target: Arc<FiniteRing>,
        images: Vec<usize>,
    ) -> Result<Self> {
        let h = RingHom {
            source,
            target,
            images,
        };
        h.verify()?;
        Ok(h)
    }

    pub fn identity(r: &Arc<FiniteRing>) -> Self {
        RingHom {
            source: Arc::clone(r),
            target: Arc::clone(r),
            images: r.elements().collect(),
        }
    }

    pub fn verify(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.images.len() != s.size || self.images.iter().any(|&y| y >= t.size) {
            return Err(Error::invalid("homomorphism table has wrong shape"));
        }
        if self.images[s.one] != t.one {
            return Err(Error::invalid("map does not preserve 1"));
        }
        for x in s.elements() {
            for y in s.elements() {
                if self.images[s.add(x, y)] != t.add(self.images[x], self.images[y]) {
                    return Err(Error::invalid(format!(
                        "map does not preserve the sum {x}+{y}"
                    )));
                }
                if self.images[s.mul(x, y)] != t.mul(self.images[x], self.images[y]) {
                    return Err(Error::invalid(format!(
                        "map does not preserve the product {x}·{y}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn then(&self, next: &RingHom) -> RingHom {
        RingHom {
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

    pub fn inverse(&self) -> Option<RingHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(RingHom {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            images: inv,
        })
    }
}

/// All unital ring homomorphisms `r → s`.
pub fn ring_homomorphisms(
    r: &Arc<FiniteRing>,
    s: &Arc<FiniteRing>,
    budget: u64,
) -> Result<Vec<RingHom>> {
    let config = search::SearchConfig {
        budget,
        injective: false,
        mode: search::Mode::All,
    };
    Ok(
        search::homomorphisms(&r.structure(), &s.structure(), config)?
            .into_iter()
            .map(|m| RingHom {
                source: Arc::clone(r),
                target: Arc::clone(s),
                images: m[0].iter().map(|&y| y as usize).collect(),
            })
            .collect(),
    )
}

/// A ring isomorphism `r → s`, if one exists.
pub fn ring_isomorphism(
    r: &Arc<FiniteRing>,
    s: &Arc<FiniteRing>,
    budget: u64,
) -> Result<Option<RingHom>> {
    Ok(
        search::find_isomorphism(&r.structure(), &s.structure(), budget)?.map(|m| RingHom {
            source: Arc::clone(r),
            target: Arc::clone(s),
            images: m[0].iter().map(|&y| y as usize).collect(),
        }),
    )
}
