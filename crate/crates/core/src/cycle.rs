//! Cycles based on a prescribed X-subset, k-cyclicity, super-cyclicity and
//! longest cycles.
//!
//! A cycle based on A is a cyclic ordering of A together with a system of
//! distinct representatives: one common neighbor per consecutive pair, all
//! different. The search anchors the ordering at min(A), extends it in
//! increasing vertex order, and keeps a running matching of the pairs formed
//! so far to distinct y-vertices; a prefix whose pairs cannot be matched is
//! cut immediately.
//!
//! Witnesses are deterministic. Among all cycles based on A, the one returned
//! is the least under the order: x-sequence (starting at min(A)) compared
//! lexicographically, then y-sequence compared lexicographically.

use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;

use crate::bigraph::Bigraph;
use crate::error::{Error, Result};
use crate::matching::{least_sdr, SlotMatcher};
use crate::report::{CheckReport, Witness};
use crate::vertex::{for_each_k_subset, BitIter, Side, Vertex, VertexSet};

/// An alternating cycle `x_1 y_1 x_2 y_2 ... x_l y_l (x_1)`; list order is
/// the clockwise orientation. `ys[i]` sits between `xs[i]` and `xs[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseCycle {
    xs: Vec<usize>,
    ys: Vec<usize>,
}

impl BaseCycle {
    /// Validates against `g`: equal lengths, l ≥ 2, distinct entries, and
    /// consecutive entries adjacent (including `ys[l-1]`–`xs[0]`).
    pub fn new(g: &Bigraph, xs: Vec<usize>, ys: Vec<usize>) -> Result<Self> {
        let c = BaseCycle { xs, ys };
        c.validate(g)?;
        Ok(c)
    }

    /// From an alternating vertex sequence, which may start on either side.
    pub fn from_vertices(g: &Bigraph, seq: &[Vertex]) -> Result<Self> {
        if seq.len() % 2 != 0 {
            return Err(Error::invalid("a bipartite cycle has even length"));
        }
        let start = seq.iter().position(|v| v.is_x()).unwrap_or(0);
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for i in 0..seq.len() {
            let v = seq[(start + i) % seq.len()];
            let expect = if i % 2 == 0 { Side::X } else { Side::Y };
            if v.side != expect {
                return Err(Error::invalid("cycle must alternate between X and Y"));
            }
            if i % 2 == 0 {
                xs.push(v.index);
            } else {
                ys.push(v.index);
            }
        }
        Self::new(g, xs, ys)
    }

    /// Parses `x1,y1,x2,y2,...` (1-based, commas or whitespace).
    pub fn parse(g: &Bigraph, text: &str) -> Result<Self> {
        let seq = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(Vertex::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::from_vertices(g, &seq)
    }

    pub fn validate(&self, g: &Bigraph) -> Result<()> {
        let l = self.xs.len();
        if l != self.ys.len() {
            return Err(Error::invalid("cycle needs as many y- as x-vertices"));
        }
        if l < 2 {
            return Err(Error::invalid("a cycle has at least 4 vertices"));
        }
        let mut seen_x = 0u64;
        let mut seen_y = 0u64;
        for i in 0..l {
            g.check_vertex(Vertex::x(self.xs[i]))?;
            g.check_vertex(Vertex::y(self.ys[i]))?;
            if seen_x >> self.xs[i] & 1 == 1 || seen_y >> self.ys[i] & 1 == 1 {
                return Err(Error::invalid("cycle repeats a vertex"));
            }
            seen_x |= 1 << self.xs[i];
            seen_y |= 1 << self.ys[i];
            let next = self.xs[(i + 1) % l];
            if !g.has_edge(self.xs[i], self.ys[i]) || !g.has_edge(next, self.ys[i]) {
                return Err(Error::invalid(format!(
                    "y{} is not adjacent to both x{} and x{}",
                    self.ys[i] + 1,
                    self.xs[i] + 1,
                    next + 1
                )));
            }
        }
        Ok(())
    }

    /// ℓ, the number of x-vertices.
    pub fn half_len(&self) -> usize {
        self.xs.len()
    }

    /// Number of vertices, 2ℓ.
    pub fn len(&self) -> usize {
        2 * self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[usize] {
        &self.xs
    }

    pub fn ys(&self) -> &[usize] {
        &self.ys
    }

    pub fn x_bits(&self) -> u64 {
        self.xs.iter().fold(0, |m, &x| m | 1 << x)
    }

    pub fn y_bits(&self) -> u64 {
        self.ys.iter().fold(0, |m, &y| m | 1 << y)
    }

    pub fn x_set(&self) -> VertexSet {
        VertexSet::from_bits(Side::X, self.x_bits())
    }

    pub fn y_set(&self) -> VertexSet {
        VertexSet::from_bits(Side::Y, self.y_bits())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match v.side {
            Side::X => self.xs.contains(&v.index),
            Side::Y => self.ys.contains(&v.index),
        }
    }

    /// Vertex at clockwise position `p` (mod 2ℓ); even positions are x's.
    pub fn at(&self, p: usize) -> Vertex {
        let p = p % self.len();
        if p % 2 == 0 {
            Vertex::x(self.xs[p / 2])
        } else {
            Vertex::y(self.ys[p / 2])
        }
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        match v.side {
            Side::X => self.xs.iter().position(|&x| x == v.index).map(|i| 2 * i),
            Side::Y => self.ys.iter().position(|&y| y == v.index).map(|i| 2 * i + 1),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.len()).map(|p| self.at(p))
    }

    /// The same cycle traversed counterclockwise from the same first vertex.
    pub fn reversed(&self) -> BaseCycle {
        let l = self.xs.len();
        BaseCycle {
            xs: (0..l).map(|i| self.xs[(l - i) % l]).collect(),
            ys: (0..l).map(|i| self.ys[l - 1 - i]).collect(),
        }
    }
}

impl fmt::Display for BaseCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

struct OrderSearch<'a> {
    g: &'a Bigraph,
    members: Vec<usize>,
    order: Vec<usize>,
    used: u64,
    matcher: SlotMatcher,
}

impl OrderSearch<'_> {
    #[inline]
    fn common(&self, a: usize, b: usize) -> u64 {
        self.g.x_neighbors(a) & self.g.x_neighbors(b)
    }

    fn run(&mut self) -> bool {
        let k = self.members.len();
        let last = *self.order.last().unwrap();
        if self.order.len() == k {
            // orientation: the reverse ordering is explored elsewhere
            if self.order[1] > self.order[k - 1] {
                return false;
            }
            if self.matcher.push(self.common(last, self.order[0])) {
                self.matcher.pop();
                return true;
            }
            return false;
        }
        for i in 0..k {
            let v = self.members[i];
            if self.used >> v & 1 == 1 {
                continue;
            }
            if !self.matcher.push(self.common(last, v)) {
                continue;
            }
            self.order.push(v);
            self.used |= 1 << v;
            if self.run() {
                return true;
            }
            self.used &= !(1 << v);
            self.order.pop();
            self.matcher.pop();
        }
        false
    }
}

/// Cheap necessary conditions for a cycle based on A.
fn plausible(g: &Bigraph, a: u64) -> bool {
    let hat = g.super_neighborhood_bits(a);
    if (hat.count_ones() as u64) < a.count_ones() as u64 {
        return false;
    }
    BitIter(a).all(|x| (g.x_neighbors(x) & hat).count_ones() >= 2)
}

/// The least cyclic ordering of A (anchored at min A) that admits distinct
/// representatives, if any. `a` must have at least 3 members.
fn least_ordering(g: &Bigraph, a: u64) -> Option<Vec<usize>> {
    debug_assert!(a.count_ones() >= 3);
    if !plausible(g, a) {
        return None;
    }
    let members: Vec<usize> = BitIter(a).collect();
    let first = members[0];
    let mut s = OrderSearch {
        g,
        members,
        order: vec![first],
        used: 1 << first,
        matcher: SlotMatcher::new(),
    };
    s.run().then_some(s.order)
}

/// Existence of a cycle based on the x-mask `a` (|a| ≥ 3).
pub fn has_based_cycle(g: &Bigraph, a: u64) -> bool {
    least_ordering(g, a).is_some()
}

pub(crate) fn based_cycle_bits(g: &Bigraph, a: u64) -> Option<BaseCycle> {
    let xs = least_ordering(g, a)?;
    let l = xs.len();
    let pairs: Vec<u64> = (0..l)
        .map(|i| g.x_neighbors(xs[i]) & g.x_neighbors(xs[(i + 1) % l]))
        .collect();
    let ys = least_sdr(&pairs).expect("ordering was accepted with a matching");
    Some(BaseCycle { xs, ys })
}

/// A cycle C with V(C) ∩ X = A, or `None` if there is none. The returned
/// cycle's y-vertices all lie in N̂(A).
pub fn find_based_cycle(g: &Bigraph, a: &VertexSet) -> Result<Option<BaseCycle>> {
    g.expect_x_subset(a)?;
    if a.len() < 3 {
        return Err(Error::invalid(format!(
            "based cycles need at least 3 base vertices, got {}",
            a.len()
        )));
    }
    Ok(based_cycle_bits(g, a.bits()))
}

/// The first k-subset (lexicographic order) without a based cycle.
pub(crate) fn first_failing_k_subset(g: &Bigraph, universe: u64, k: usize) -> Option<u64> {
    match for_each_k_subset(universe, k, |s| {
        if has_based_cycle(g, s) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(s)
        }
    }) {
        ControlFlow::Break(s) => Some(s),
        ControlFlow::Continue(()) => None,
    }
}

/// Every k-subset of X has a based cycle. Requires 3 ≤ k ≤ |X|.
pub fn is_k_cyclic(g: &Bigraph, k: usize) -> Result<CheckReport> {
    if k < 3 || k > g.nx() {
        return Err(Error::invalid(format!(
            "k must satisfy 3 <= k <= |X| = {}, got {k}",
            g.nx()
        )));
    }
    let name = format!("{k}-cyclic");
    Ok(match first_failing_k_subset(g, g.x_mask(), k) {
        None => CheckReport::pass(name),
        Some(s) => {
            let w = VertexSet::from_bits(Side::X, s);
            CheckReport::fail(name, format!("no cycle based on {w}")).with_witness(Witness::Subset(w))
        }
    })
}

/// The first subset of size ≥ 3 (by size, then lexicographic) without a
/// based cycle. All smaller subsets pass, so the result is inclusion-minimal.
pub(crate) fn minimal_failing_subset(g: &Bigraph, universe: u64) -> Option<u64> {
    (3..=universe.count_ones() as usize).find_map(|k| first_failing_k_subset(g, universe, k))
}

/// k-cyclic for every 3 ≤ k ≤ |X|; vacuous when |X| ≤ 2.
pub fn is_super_cyclic(g: &Bigraph) -> CheckReport {
    if g.nx() <= 2 {
        return CheckReport::pass("super-cyclic").with_note("vacuous: |X| <= 2");
    }
    match minimal_failing_subset(g, g.x_mask()) {
        None => CheckReport::pass("super-cyclic"),
        Some(s) => {
            let w = VertexSet::from_bits(Side::X, s);
            CheckReport::fail("super-cyclic", format!("no cycle based on {w}"))
                .with_witness(Witness::Subset(w))
        }
    }
}

/// Largest number of cycle-eligible vertices `longest_cycle_length` accepts.
pub const LONGEST_CYCLE_CAP: usize = 24;

/// Vertex count of a longest cycle; 0 if the graph is a forest.
///
/// Exact search over the 2-core. Fails with a capacity error when the 2-core
/// has more than [`LONGEST_CYCLE_CAP`] vertices.
pub fn longest_cycle_length(g: &Bigraph) -> Result<usize> {
    // 2-core by peeling
    let mut xm = g.x_mask();
    let mut ym = g.y_mask();
    loop {
        let mut changed = false;
        for x in BitIter(xm) {
            if (g.x_neighbors(x) & ym).count_ones() < 2 {
                xm &= !(1 << x);
                changed = true;
            }
        }
        for y in BitIter(ym) {
            if (g.y_neighbors(y) & xm).count_ones() < 2 {
                ym &= !(1 << y);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let verts: Vec<Vertex> = BitIter(xm)
        .map(Vertex::x)
        .chain(BitIter(ym).map(Vertex::y))
        .collect();
    let n = verts.len();
    if n > LONGEST_CYCLE_CAP {
        return Err(Error::capacity(format!(
            "longest cycle search is exact up to {LONGEST_CYCLE_CAP} cycle-eligible vertices, this graph has {n}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = verts
        .iter()
        .map(|&u| {
            verts
                .iter()
                .enumerate()
                .filter(|(_, &v)| g.adjacent(u, v))
                .fold(0u32, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let bound = 2 * xm.count_ones().min(ym.count_ones()) as usize;
    let mut best = 0usize;
    for s in 0..n {
        let allowed: u32 = !0u32 << s & (((1u64 << n) - 1) as u32);
        if (allowed.count_ones() as usize) <= best {
            break;
        }
        let mut memo = HashSet::new();
        longest_from(&adj, s, s, 1 << s, allowed, &mut memo, &mut best);
        if best == bound {
            break;
        }
    }
    Ok(best)
}

/// DFS over simple paths starting at `start` through vertices in `allowed`
/// (all ≥ start, so each cycle is found from its least vertex).
fn longest_from(
    adj: &[u32],
    start: usize,
    v: usize,
    path: u32,
    allowed: u32,
    memo: &mut HashSet<(u32, u8)>,
    best: &mut usize,
) {
    if !memo.insert((path, v as u8)) {
        return;
    }
    let len = path.count_ones() as usize;
    if len >= 4 && adj[v] >> start & 1 == 1 {
        *best = (*best).max(len);
    }
    let open = allowed & !path;
    if len + open.count_ones() as usize <= *best {
        return;
    }
    let mut next = adj[v] & open;
    while next != 0 {
        let w = next.trailing_zeros() as usize;
        next &= next - 1;
        longest_from(adj, start, w, path | 1 << w, allowed, memo, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_bipartite, construct_g3};

    fn c6() -> Bigraph {
        Bigraph::new(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn c6_cycle_is_itself() {
        let g = c6();
        let c = find_based_cycle(&g, &g.x_set()).unwrap().unwrap();
        assert_eq!(c.to_string(), "x1,y1,x2,y2,x3,y3");
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn g3_111_has_no_hamiltonian_based_cycle() {
        let g = construct_g3(1, 1, 1, 3).unwrap();
        assert_eq!(find_based_cycle(&g, &g.x_set()).unwrap(), None);
    }

    #[test]
    fn k33_based_cycle_uses_three_ys() {
        let g = complete_bipartite(3, 3).unwrap();
        let c = find_based_cycle(&g, &g.x_set()).unwrap().unwrap();
        assert_eq!(c.y_set().len(), 3);
        // least witness
        assert_eq!(c.to_string(), "x1,y1,x2,y2,x3,y3");
        c.validate(&g).unwrap();
    }

    #[test]
    fn based_cycle_rejects_small_sets() {
        let g = c6();
        let a = VertexSet::from_indices(Side::X, [0, 1]).unwrap();
        assert!(matches!(find_based_cycle(&g, &a), Err(Error::InvalidInput(_))));
        let y = VertexSet::from_bits(Side::Y, 0b111);
        assert!(matches!(find_based_cycle(&g, &y), Err(Error::SideMismatch { .. })));
    }

    #[test]
    fn witness_is_least_in_documented_order() {
        // K_{4,4}: least ordering is x1 x2 x3 x4 with y's 1..4 in order
        let g = complete_bipartite(4, 4).unwrap();
        let c = find_based_cycle(&g, &g.x_set()).unwrap().unwrap();
        assert_eq!(c.xs(), &[0, 1, 2, 3]);
        assert_eq!(c.ys(), &[0, 1, 2, 3]);
        // force x1 - x3 adjacency to be the only route from x1 at one end
        let g = Bigraph::new(
            4,
            4,
            [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (3, 2), (3, 3), (0, 3)],
        )
        .unwrap();
        let c = find_based_cycle(&g, &g.x_set()).unwrap().unwrap();
        assert_eq!(c.to_string(), "x1,y1,x3,y2,x2,y3,x4,y4");
    }

    #[test]
    fn k_cyclic_examples() {
        assert!(is_k_cyclic(&complete_bipartite(3, 3).unwrap(), 3).unwrap().passed);
        assert!(is_k_cyclic(&c6(), 3).unwrap().passed);
        let g = construct_g3(1, 1, 1, 3).unwrap();
        let r = is_k_cyclic(&g, 3).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness_subset(), Some(g.x_set()));
        assert!(is_k_cyclic(&g, 2).is_err());
        assert!(is_k_cyclic(&g, 4).is_err());
    }

    #[test]
    fn super_cyclic_examples() {
        assert!(is_super_cyclic(&complete_bipartite(3, 3).unwrap()).passed);
        assert!(is_super_cyclic(&c6()).passed);
        let r = is_super_cyclic(&construct_g3(2, 1, 1, 3).unwrap());
        assert!(!r.passed);
        // one vertex per part is the first failure
        assert_eq!(r.witness_subset().unwrap().to_string(), "{x1,x3,x4}");
        let tiny = Bigraph::new(2, 1, [(0, 0)]).unwrap();
        assert!(is_super_cyclic(&tiny).passed);
    }

    #[test]
    fn longest_cycle_examples() {
        assert_eq!(longest_cycle_length(&construct_g3(2, 1, 1, 3).unwrap()).unwrap(), 6);
        assert_eq!(longest_cycle_length(&construct_g3(2, 2, 1, 4).unwrap()).unwrap(), 8);
        assert_eq!(longest_cycle_length(&c6()).unwrap(), 6);
        assert_eq!(longest_cycle_length(&complete_bipartite(1, 5).unwrap()).unwrap(), 0);
        assert_eq!(longest_cycle_length(&complete_bipartite(2, 2).unwrap()).unwrap(), 4);
        assert_eq!(longest_cycle_length(&complete_bipartite(3, 5).unwrap()).unwrap(), 6);
        assert!(matches!(
            longest_cycle_length(&complete_bipartite(13, 13).unwrap()),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn reversal_round_trips() {
        let g = complete_bipartite(4, 4).unwrap();
        let c = find_based_cycle(&g, &g.x_set()).unwrap().unwrap();
        let r = c.reversed();
        r.validate(&g).unwrap();
        assert_eq!(r.to_string(), "x1,y4,x4,y3,x3,y2,x2,y1");
        assert_eq!(r.reversed(), c);
    }

    #[test]
    fn parse_accepts_rotations() {
        let g = c6();
        let c = BaseCycle::parse(&g, "y1,x2,y2,x3,y3,x1").unwrap();
        assert_eq!(c.to_string(), "x2,y2,x3,y3,x1,y1");
        assert!(BaseCycle::parse(&g, "x1,y1,x2,y3").is_err());
        assert!(BaseCycle::parse(&g, "x1,y1,x2").is_err());
    }
}
