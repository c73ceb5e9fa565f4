//! Graph families, random instances, and exhaustive enumeration of bigraphs
//! up to isomorphism.
//!
//! Enumeration works on columns: a bigraph is a multiset of y-neighborhoods
//! (each an nx-bit value), so listing nondecreasing column sequences already
//! removes column permutations. A sequence is emitted only if no row
//! permutation maps it to a lexicographically smaller sorted sequence, which
//! leaves exactly one representative per class. The bipartition is ordered:
//! X and Y are never swapped.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigraph::Bigraph;
use crate::condition::satisfies_condition;
use crate::cycle::BaseCycle;
use crate::error::{Error, Result};
use crate::vertex::{low_mask, BitIter};

/// Enumeration caps.
pub const ENUM_MAX_NX: usize = 6;
pub const ENUM_MAX_NY: usize = 8;

/// The three-part extremal graph: X splits into parts of sizes n1 ≥ n2 ≥ n3,
/// part i is joined completely to its own group of δ−2 y-vertices, and two
/// apex y-vertices `a`, `b` (the last two indices) see all of X.
///
/// X is ordered part 1, part 2, part 3; Y is ordered group 1, group 2,
/// group 3, a, b. Every x has degree δ and |Y| = 3δ − 4.
pub fn construct_g3(n1: usize, n2: usize, n3: usize, delta: usize) -> Result<Bigraph> {
    if !(n1 >= n2 && n2 >= n3 && n3 >= 1) {
        return Err(Error::invalid(format!(
            "parts must satisfy n1 >= n2 >= n3 >= 1, got {n1},{n2},{n3}"
        )));
    }
    if delta < 3 {
        return Err(Error::invalid(format!("delta must be at least 3, got {delta}")));
    }
    let group = delta - 2;
    let ny = 3 * group + 2;
    let nx = n1 + n2 + n3;
    let (a, b) = (3 * group, 3 * group + 1);
    let mut edges = Vec::new();
    let mut x = 0;
    for (part, &size) in [n1, n2, n3].iter().enumerate() {
        for _ in 0..size {
            edges.extend((0..group).map(|j| (x, part * group + j)));
            edges.push((x, a));
            edges.push((x, b));
            x += 1;
        }
    }
    Bigraph::new(nx, ny, edges)
}

pub fn complete_bipartite(nx: usize, ny: usize) -> Result<Bigraph> {
    Bigraph::new(nx, ny, (0..nx).flat_map(|x| (0..ny).map(move |y| (x, y))))
}

/// The 2ℓ-cycle x1 y1 x2 y2 ... xℓ yℓ.
pub fn cycle_graph(l: usize) -> Result<Bigraph> {
    if l < 2 {
        return Err(Error::invalid("a bipartite cycle needs l >= 2"));
    }
    Bigraph::new(l, l, (0..l).flat_map(|i| [(i, i), ((i + 1) % l, i)]))
}

/// Each edge present with probability 1/2, then x-vertices below
/// `min_x_degree` get random extra neighbors. Deterministic in `seed`.
pub fn random_bigraph(nx: usize, ny: usize, min_x_degree: usize, seed: u64) -> Result<Bigraph> {
    if min_x_degree > ny {
        return Err(Error::invalid(format!(
            "minimum x-degree {min_x_degree} exceeds |Y| = {ny}"
        )));
    }
    Bigraph::empty(nx, ny)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = vec![0u64; nx];
    for row in rows.iter_mut() {
        for y in 0..ny {
            if rng.gen_bool(0.5) {
                *row |= 1 << y;
            }
        }
        let missing = min_x_degree.saturating_sub(row.count_ones() as usize);
        if missing > 0 {
            let mut free: Vec<usize> = BitIter(!*row & low_mask(ny)).collect();
            free.shuffle(&mut rng);
            for &y in &free[..missing] {
                *row |= 1 << y;
            }
        }
    }
    Bigraph::from_rows(ny, &rows)
}

/// A random graph on `nx` + `ny` vertices containing a random 2ℓ-cycle, plus
/// every other X,Y-pair independently with probability `p`.
pub fn random_with_cycle<R: Rng>(
    rng: &mut R,
    nx: usize,
    ny: usize,
    l: usize,
    p: f64,
) -> Result<(Bigraph, BaseCycle)> {
    if l < 2 || l > nx || l > ny {
        return Err(Error::invalid(format!(
            "cannot place a {}-cycle in a {nx}+{ny} bigraph",
            2 * l
        )));
    }
    let mut xs: Vec<usize> = (0..nx).collect();
    let mut ys: Vec<usize> = (0..ny).collect();
    xs.shuffle(rng);
    ys.shuffle(rng);
    xs.truncate(l);
    ys.truncate(l);
    let mut rows = vec![0u64; nx];
    for i in 0..l {
        rows[xs[i]] |= 1 << ys[i];
        rows[xs[(i + 1) % l]] |= 1 << ys[i];
    }
    for row in rows.iter_mut() {
        for y in 0..ny {
            if rng.gen_bool(p) {
                *row |= 1 << y;
            }
        }
    }
    let g = Bigraph::from_rows(ny, &rows)?;
    let c = BaseCycle::new(&g, xs, ys)?;
    Ok((g, c))
}

/// Post-canonicity filters for enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumFilter {
    pub min_x_degree: usize,
    /// Columns of smaller weight are never generated (weight is invariant
    /// under row permutations, so this is exact).
    pub min_y_degree: usize,
    /// Keep only graphs satisfying the necessary condition.
    pub condition: bool,
}

impl EnumFilter {
    pub fn accepts(&self, g: &Bigraph) -> bool {
        g.min_x_degree() >= self.min_x_degree && (!self.condition || satisfies_condition(g))
    }
}

/// A slice of the enumeration: all column multisets with `ny` columns whose
/// smallest column is `alphabet[first]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shard {
    pub ny: usize,
    pub first: usize,
}

/// Precomputed tables for enumerating classes with a fixed |X|.
#[derive(Clone, Debug)]
pub struct EnumPlan {
    nx: usize,
    ny_max: usize,
    filter: EnumFilter,
    alphabet: Vec<u64>,
    /// One lookup table per non-identity row permutation: column → image.
    perms: Vec<Vec<u8>>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: u32, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if used >> i & 1 == 0 {
                prefix.push(i);
                rec(prefix, used | 1 << i, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 0, n, &mut out);
    out
}

impl EnumPlan {
    pub fn new(nx: usize, ny_max: usize, filter: EnumFilter) -> Result<Self> {
        if nx > ENUM_MAX_NX || ny_max > ENUM_MAX_NY {
            return Err(Error::capacity(format!(
                "enumeration is capped at nx <= {ENUM_MAX_NX}, ny_max <= {ENUM_MAX_NY}; got nx={nx}, ny_max={ny_max}"
            )));
        }
        let alphabet: Vec<u64> = (0..1u64 << nx)
            .filter(|c| c.count_ones() as usize >= filter.min_y_degree)
            .collect();
        let perms = permutations(nx)
            .into_iter()
            .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
            .map(|p| {
                (0..1u64 << nx)
                    .map(|c| BitIter(c).fold(0u8, |m, i| m | 1 << p[i]))
                    .collect()
            })
            .collect();
        Ok(EnumPlan {
            nx,
            ny_max,
            filter,
            alphabet,
            perms,
        })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny_max(&self) -> usize {
        self.ny_max
    }

    pub fn filter(&self) -> EnumFilter {
        self.filter
    }

    /// All shards in enumeration order: by ny, then by first column.
    pub fn shards(&self) -> Vec<Shard> {
        let mut out = vec![Shard { ny: 0, first: 0 }];
        for ny in 1..=self.ny_max {
            out.extend((0..self.alphabet.len()).map(|first| Shard { ny, first }));
        }
        out
    }

    /// Iterates the canonical class representatives of one shard (before the
    /// post-canonicity filters), optionally resuming at a saved position.
    pub fn shard_iter(&self, shard: Shard, resume: Option<Vec<usize>>) -> ShardIter<'_> {
        let cursor = match resume {
            Some(pos) => Some(pos),
            None if shard.ny == 0 => Some(Vec::new()),
            None if shard.first < self.alphabet.len() => Some(vec![shard.first; shard.ny]),
            None => None,
        };
        ShardIter { plan: self, cursor }
    }

    /// Is the nondecreasing column sequence the least in its row-orbit?
    fn is_canonical(&self, cols: &[u64]) -> bool {
        let mut img = vec![0u64; cols.len()];
        for table in &self.perms {
            for (d, &c) in img.iter_mut().zip(cols) {
                *d = table[c as usize] as u64;
            }
            img.sort_unstable();
            if img.as_slice() < cols {
                return false;
            }
        }
        true
    }
}

/// Iterator over one shard. `position()` is the next multiset to examine,
/// which is what a checkpoint stores.
#[derive(Clone, Debug)]
pub struct ShardIter<'a> {
    plan: &'a EnumPlan,
    cursor: Option<Vec<usize>>,
}

impl ShardIter<'_> {
    pub fn position(&self) -> Option<&[usize]> {
        self.cursor.as_deref()
    }

    fn advance(&mut self) {
        let Some(cur) = self.cursor.as_mut() else {
            return;
        };
        let top = self.plan.alphabet.len() - 1;
        // the first entry is pinned by the shard
        match (1..cur.len()).rev().find(|&i| cur[i] < top) {
            Some(i) => {
                let v = cur[i] + 1;
                for c in cur[i..].iter_mut() {
                    *c = v;
                }
            }
            None => self.cursor = None,
        }
    }
}

impl Iterator for ShardIter<'_> {
    type Item = Bigraph;

    fn next(&mut self) -> Option<Bigraph> {
        loop {
            let cur = self.cursor.clone()?;
            self.advance();
            let cols: Vec<u64> = cur.iter().map(|&i| self.plan.alphabet[i]).collect();
            if self.plan.is_canonical(&cols) {
                return Some(Bigraph::from_columns(self.plan.nx, &cols).expect("within caps"));
            }
        }
    }
}

/// Every bigraph with |X| = nx and |Y| ≤ ny_max, once per isomorphism class
/// (independent row and column permutations), that passes `filter`. Ordered
/// by |Y|, then by sorted column sequence.
pub fn enumerate_bigraphs(
    nx: usize,
    ny_max: usize,
    filter: EnumFilter,
) -> Result<impl Iterator<Item = Bigraph>> {
    let plan = EnumPlan::new(nx, ny_max, filter)?;
    let shards = plan.shards();
    Ok(shards.into_iter().flat_map(move |s| {
        plan.shard_iter(s, None)
            .filter(|g| filter.accepts(g))
            .collect::<Vec<_>>()
    }))
}
