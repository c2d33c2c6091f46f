//! Backtracking search for homomorphisms between finite multi-sorted algebras.
//!
//! Rings, G-rings and Tambara functors are all presented as a [`Structure`]:
//! a family of finite sorts with binary operations inside a sort, unary
//! operations between sorts and distinguished constants. Two structures with
//! the same signature (operations matched by position) can be searched for
//! homomorphisms. Images of a greedy generating set are guessed; everything
//! else follows by propagation, which also checks every relation.

use crate::error::{Error, Result};

/// Default node budget for searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct BinOp {
    pub sort: usize,
    pub table: Vec<u32>,
    pub commutative: bool,
}

#[derive(Clone, Debug)]
pub struct UnOp {
    pub from: usize,
    pub to: usize,
    pub table: Vec<u32>,
}

#[derive(Clone, Debug, Default)]
pub struct Structure {
    pub sizes: Vec<usize>,
    pub binops: Vec<BinOp>,
    pub unops: Vec<UnOp>,
    pub constants: Vec<(usize, u32)>,
    /// Index into `binops` of the additive group of each sort, used for pruning.
    pub additive: Vec<Option<usize>>,
}

impl Structure {
    pub fn new(sizes: Vec<usize>) -> Self {
        let n = sizes.len();
        Structure {
            sizes,
            additive: vec![None; n],
            ..Default::default()
        }
    }

    pub fn binop(&mut self, sort: usize, table: Vec<u32>, commutative: bool) -> usize {
        self.binops.push(BinOp {
            sort,
            table,
            commutative,
        });
        self.binops.len() - 1
    }

    pub fn unop(&mut self, from: usize, to: usize, table: Vec<u32>) {
        self.unops.push(UnOp { from, to, table });
    }

    pub fn constant(&mut self, sort: usize, value: u32) {
        self.constants.push((sort, value));
    }

    fn compatible(&self, other: &Structure) -> bool {
        self.sizes.len() == other.sizes.len()
            && self.binops.len() == other.binops.len()
            && self.unops.len() == other.unops.len()
            && self.constants.len() == other.constants.len()
            && self
                .binops
                .iter()
                .zip(&other.binops)
                .all(|(a, b)| a.sort == b.sort)
            && self
                .unops
                .iter()
                .zip(&other.unops)
                .all(|(a, b)| a.from == b.from && a.to == b.to)
            && self
                .constants
                .iter()
                .zip(&other.constants)
                .all(|(a, b)| a.0 == b.0)
    }

    /// Additive order of every element of every sort (1 where unknown).
    fn orders(&self) -> Vec<Vec<usize>> {
        (0..self.sizes.len())
            .map(|s| match self.additive[s] {
                None => vec![1; self.sizes[s]],
                Some(op) => {
                    let n = self.sizes[s];
                    let t = &self.binops[op].table;
                    let zero = (0..n)
                        .find(|&z| (0..n).all(|x| t[z * n + x] as usize == x))
                        .unwrap_or(0);
                    (0..n)
                        .map(|x| {
                            let mut k = 1;
                            let mut y = x;
                            while y != zero {
                                y = t[y * n + x] as usize;
                                k += 1;
                            }
                            k
                        })
                        .collect()
                }
            })
            .collect()
    }

    /// A greedy generating set: elements in (sort, index) order not already
    /// generated by the constants and earlier generators.
    pub fn generators(&self) -> Vec<(usize, u32)> {
        let mut reached: Vec<Vec<bool>> = self.sizes.iter().map(|&n| vec![false; n]).collect();
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); self.sizes.len()];
        let mut queue = Vec::new();
        for &(s, c) in &self.constants {
            if !reached[s][c as usize] {
                reached[s][c as usize] = true;
                queue.push((s, c));
            }
        }
        let mut gens = Vec::new();
        self.close(&mut reached, &mut lists, &mut queue);
        for s in 0..self.sizes.len() {
            for x in 0..self.sizes[s] as u32 {
                if !reached[s][x as usize] {
                    gens.push((s, x));
                    reached[s][x as usize] = true;
                    queue.push((s, x));
                    self.close(&mut reached, &mut lists, &mut queue);
                }
            }
        }
        gens
    }

    fn close(
        &self,
        reached: &mut [Vec<bool>],
        lists: &mut [Vec<u32>],
        queue: &mut Vec<(usize, u32)>,
    ) {
        while let Some((s, x)) = queue.pop() {
            lists[s].push(x);
            let n = self.sizes[s];
            for op in self.binops.iter().filter(|o| o.sort == s) {
                for i in 0..lists[s].len() {
                    let z = lists[s][i] as usize;
                    for r in [op.table[x as usize * n + z], op.table[z * n + x as usize]] {
                        if !reached[s][r as usize] {
                            reached[s][r as usize] = true;
                            queue.push((s, r));
                        }
                    }
                }
            }
            for op in self.unops.iter().filter(|o| o.from == s) {
                let r = op.table[x as usize];
                if !reached[op.to][r as usize] {
                    reached[op.to][r as usize] = true;
                    queue.push((op.to, r));
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Stop at the first homomorphism.
    First,
    /// Enumerate all homomorphisms.
    All,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub budget: u64,
    pub injective: bool,
    pub mode: Mode,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            injective: false,
            mode: Mode::First,
        }
    }
}

struct State<'a> {
    src: &'a Structure,
    dst: &'a Structure,
    map: Vec<Vec<u32>>,
    used: Vec<Vec<bool>>,
    assigned: Vec<Vec<u32>>,
    trail: Vec<(usize, u32)>,
    injective: bool,
}

impl State<'_> {
    fn assign(&mut self, s: usize, x: u32, y: u32) -> bool {
        let mut queue = vec![(s, x, y)];
        while let Some((s, x, y)) = queue.pop() {
            let cur = self.map[s][x as usize];
            if cur != UNSET {
                if cur != y {
                    return false;
                }
                continue;
            }
            if self.injective {
                if self.used[s][y as usize] {
                    return false;
                }
                self.used[s][y as usize] = true;
            }
            self.map[s][x as usize] = y;
            self.assigned[s].push(x);
            self.trail.push((s, x));
            let n = self.src.sizes[s];
            let m = self.dst.sizes[s];
            for (a, b) in self.src.binops.iter().zip(&self.dst.binops) {
                if a.sort != s {
                    continue;
                }
                for &z in &self.assigned[s] {
                    let fz = self.map[s][z as usize];
                    queue.push((
                        s,
                        a.table[x as usize * n + z as usize],
                        b.table[y as usize * m + fz as usize],
                    ));
                    if !a.commutative {
                        queue.push((
                            s,
                            a.table[z as usize * n + x as usize],
                            b.table[fz as usize * m + y as usize],
                        ));
                    }
                }
            }
            for (a, b) in self.src.unops.iter().zip(&self.dst.unops) {
                if a.from == s {
                    queue.push((a.to, a.table[x as usize], b.table[y as usize]));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (s, x) = self.trail.pop().unwrap();
            let y = self.map[s][x as usize];
            if self.injective {
                self.used[s][y as usize] = false;
            }
            self.map[s][x as usize] = UNSET;
            self.assigned[s].pop();
        }
    }
}

/// Searches for homomorphisms `src → dst`. Each result lists the image of every
/// element of every sort. Exceeding the budget yields [`Error::Timeout`].
pub fn homomorphisms(
    src: &Structure,
    dst: &Structure,
    config: SearchConfig,
) -> Result<Vec<Vec<Vec<u32>>>> {
    if !src.compatible(dst) {
        return Err(Error::invalid("structures have different signatures"));
    }
    if config.injective && src.sizes.iter().zip(&dst.sizes).any(|(a, b)| a > b) {
        return Ok(Vec::new());
    }
    if src
        .sizes
        .iter()
        .zip(&dst.sizes)
        .any(|(&a, &b)| a > 0 && b == 0)
    {
        return Ok(Vec::new());
    }
    let mut state = State {
        src,
        dst,
        map: src.sizes.iter().map(|&n| vec![UNSET; n]).collect(),
        used: dst.sizes.iter().map(|&n| vec![false; n]).collect(),
        assigned: vec![Vec::new(); src.sizes.len()],
        trail: Vec::new(),
        injective: config.injective,
    };
    for (a, b) in src.constants.iter().zip(&dst.constants) {
        if !state.assign(a.0, a.1, b.1) {
            return Ok(Vec::new());
        }
    }
    let gens = src.generators();
    let src_orders = src.orders();
    let dst_orders = dst.orders();
    let mut results = Vec::new();
    let mut nodes = 0u64;
    let mut ctx = Ctx {
        gens: &gens,
        src_orders: &src_orders,
        dst_orders: &dst_orders,
        config,
        nodes: &mut nodes,
        results: &mut results,
    };
    ctx.recurse(&mut state, 0)?;
    Ok(results)
}

struct Ctx<'a> {
    gens: &'a [(usize, u32)],
    src_orders: &'a [Vec<usize>],
    dst_orders: &'a [Vec<usize>],
    config: SearchConfig,
    nodes: &'a mut u64,
    results: &'a mut Vec<Vec<Vec<u32>>>,
}

impl Ctx<'_> {
    /// Returns `Ok(true)` once the search should stop.
    fn recurse(&mut self, state: &mut State, i: usize) -> Result<bool> {
        if i == self.gens.len() {
            debug_assert!(state.map.iter().all(|m| m.iter().all(|&y| y != UNSET)));
            self.results.push(state.map.clone());
            return Ok(self.config.mode == Mode::First);
        }
        let (s, x) = self.gens[i];
        if state.map[s][x as usize] != UNSET {
            return self.recurse(state, i + 1);
        }
        let ord = self.src_orders[s][x as usize];
        for y in 0..state.dst.sizes[s] as u32 {
            let oy = self.dst_orders[s][y as usize];
            if !ord.is_multiple_of(oy) || (self.config.injective && ord != oy) {
                continue;
            }
            *self.nodes += 1;
            if *self.nodes > self.config.budget {
                return Err(Error::Timeout(self.config.budget));
            }
            let mark = state.trail.len();
            if state.assign(s, x, y) && self.recurse(state, i + 1)? {
                return Ok(true);
            }
            state.undo(mark);
        }
        Ok(false)
    }
}

/// The first homomorphism, if any.
pub fn find_homomorphism(
    src: &Structure,
    dst: &Structure,
    budget: u64,
) -> Result<Option<Vec<Vec<u32>>>> {
    let config = SearchConfig {
        budget,
        injective: false,
        mode: Mode::First,
    };
    Ok(homomorphisms(src, dst, config)?.pop())
}

/// The first isomorphism, if any.
pub fn find_isomorphism(
    src: &Structure,
    dst: &Structure,
    budget: u64,
) -> Result<Option<Vec<Vec<u32>>>> {
    if src.sizes != dst.sizes {
        return Ok(None);
    }
    let config = SearchConfig {
        budget,
        injective: true,
        mode: Mode::First,
    };
    Ok(homomorphisms(src, dst, config)?.pop())
}
