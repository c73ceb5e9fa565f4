//! (X,Y)-bigraphs, hypergraphs, and the operations the rest of the crate is
//! built on: super-neighborhoods, 2-connectivity and incidence graphs.

use crate::error::{Error, Result};
use crate::vertex::{low_mask, BitIter, Side, Vertex, VertexSet, MAX_SIDE};

/// A bipartite graph with an ordered bipartition (X, Y), at most 64 vertices
/// per side. Both adjacency views are kept and always agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bigraph {
    nx: usize,
    ny: usize,
    x_adj: Vec<u64>,
    y_adj: Vec<u64>,
}

/// A subgraph together with the map back to the host's vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Bigraph,
    /// `x_map[i]` is the host index of the subgraph's x-vertex `i`.
    pub x_map: Vec<usize>,
    pub y_map: Vec<usize>,
}

fn check_side(side: Side, count: usize) -> Result<()> {
    if count > MAX_SIDE {
        return Err(Error::capacity(format!(
            "side {side} has {count} vertices, the limit is {MAX_SIDE}"
        )));
    }
    Ok(())
}

impl Bigraph {
    pub fn empty(nx: usize, ny: usize) -> Result<Self> {
        check_side(Side::X, nx)?;
        check_side(Side::Y, ny)?;
        Ok(Bigraph {
            nx,
            ny,
            x_adj: vec![0; nx],
            y_adj: vec![0; ny],
        })
    }

    /// Builds a graph from 0-based `(x, y)` pairs. Repeated pairs collapse.
    pub fn new(nx: usize, ny: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(nx, ny)?;
        for (x, y) in edges {
            g.check_x(x)?;
            g.check_y(y)?;
            g.insert(x, y);
        }
        Ok(g)
    }

    /// Builds a graph from its y-neighborhoods ("columns").
    pub fn from_columns(nx: usize, columns: &[u64]) -> Result<Self> {
        let mut g = Self::empty(nx, columns.len())?;
        let valid = low_mask(nx);
        for (y, &col) in columns.iter().enumerate() {
            if col & !valid != 0 {
                return Err(Error::invalid(format!(
                    "column {} mentions x-vertices beyond {nx}",
                    y + 1
                )));
            }
            for x in BitIter(col) {
                g.insert(x, y);
            }
        }
        Ok(g)
    }

    /// Builds a graph from its x-neighborhoods ("rows").
    pub fn from_rows(ny: usize, rows: &[u64]) -> Result<Self> {
        let mut g = Self::empty(rows.len(), ny)?;
        let valid = low_mask(ny);
        for (x, &row) in rows.iter().enumerate() {
            if row & !valid != 0 {
                return Err(Error::invalid(format!(
                    "row {} mentions y-vertices beyond {ny}",
                    x + 1
                )));
            }
            for y in BitIter(row) {
                g.insert(x, y);
            }
        }
        Ok(g)
    }

    fn insert(&mut self, x: usize, y: usize) {
        self.x_adj[x] |= 1 << y;
        self.y_adj[y] |= 1 << x;
    }

    fn check_x(&self, x: usize) -> Result<()> {
        if x >= self.nx {
            return Err(Error::OutOfRange {
                side: Side::X,
                index: x,
                count: self.nx,
            });
        }
        Ok(())
    }

    fn check_y(&self, y: usize) -> Result<()> {
        if y >= self.ny {
            return Err(Error::OutOfRange {
                side: Side::Y,
                index: y,
                count: self.ny,
            });
        }
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        match v.side {
            Side::X => self.check_x(v.index),
            Side::Y => self.check_y(v.index),
        }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn x_mask(&self) -> u64 {
        low_mask(self.nx)
    }

    pub fn y_mask(&self) -> u64 {
        low_mask(self.ny)
    }

    pub fn x_set(&self) -> VertexSet {
        VertexSet::from_bits(Side::X, self.x_mask())
    }

    pub fn y_set(&self) -> VertexSet {
        VertexSet::from_bits(Side::Y, self.y_mask())
    }

    /// Neighborhood of x-vertex `x` as a mask over Y.
    #[inline]
    pub fn x_neighbors(&self, x: usize) -> u64 {
        self.x_adj[x]
    }

    /// Neighborhood of y-vertex `y` as a mask over X.
    #[inline]
    pub fn y_neighbors(&self, y: usize) -> u64 {
        self.y_adj[y]
    }

    pub fn rows(&self) -> &[u64] {
        &self.x_adj
    }

    pub fn columns(&self) -> &[u64] {
        &self.y_adj
    }

    #[inline]
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.nx && y < self.ny && self.x_adj[x] >> y & 1 == 1
    }

    /// Adjacency between two arbitrary vertices (false within a side).
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        match (u.side, v.side) {
            (Side::X, Side::Y) => self.has_edge(u.index, v.index),
            (Side::Y, Side::X) => self.has_edge(v.index, u.index),
            _ => false,
        }
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        match v.side {
            Side::X => BitIter(self.x_adj[v.index]).map(Vertex::y).collect(),
            Side::Y => BitIter(self.y_adj[v.index]).map(Vertex::x).collect(),
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        match v.side {
            Side::X => self.x_adj[v.index].count_ones() as usize,
            Side::Y => self.y_adj[v.index].count_ones() as usize,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.x_adj.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Edges as 0-based `(x, y)` pairs, sorted by x then y.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.x_adj
            .iter()
            .enumerate()
            .flat_map(|(x, &row)| BitIter(row).map(move |y| (x, y)))
    }

    /// δ: the minimum x-degree, computed on demand. 0 when X is empty.
    pub fn min_x_degree(&self) -> usize {
        self.x_adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    pub fn with_edge(&self, x: usize, y: usize) -> Result<Bigraph> {
        self.check_x(x)?;
        self.check_y(y)?;
        let mut g = self.clone();
        g.insert(x, y);
        Ok(g)
    }

    pub fn without_edge(&self, x: usize, y: usize) -> Result<Bigraph> {
        self.check_x(x)?;
        self.check_y(y)?;
        let mut g = self.clone();
        g.x_adj[x] &= !(1 << y);
        g.y_adj[y] &= !(1 << x);
        Ok(g)
    }

    /// Subgraph induced on the given x- and y-masks, with vertices renumbered
    /// in increasing host order.
    pub fn induced(&self, xmask: u64, ymask: u64) -> InducedSubgraph {
        let x_map: Vec<usize> = BitIter(xmask & self.x_mask()).collect();
        let y_map: Vec<usize> = BitIter(ymask & self.y_mask()).collect();
        let rows = x_map
            .iter()
            .map(|&hx| compress(self.x_adj[hx], &y_map))
            .collect::<Vec<_>>();
        let graph = Bigraph::from_rows(y_map.len(), &rows).expect("induced subgraph within caps");
        InducedSubgraph {
            graph,
            x_map,
            y_map,
        }
    }

    /// N̂(A) for a mask over X: the y-vertices with at least two neighbors in A.
    #[inline]
    pub fn super_neighborhood_bits(&self, a: u64) -> u64 {
        let mut once = 0u64;
        let mut twice = 0u64;
        for x in BitIter(a) {
            let n = self.x_adj[x];
            twice |= once & n;
            once |= n;
        }
        twice
    }

    /// N̂(A) = { y ∈ Y : |N(y) ∩ A| ≥ 2 }.
    pub fn super_neighborhood(&self, a: &VertexSet) -> Result<VertexSet> {
        self.expect_x_subset(a)?;
        Ok(VertexSet::from_bits(
            Side::Y,
            self.super_neighborhood_bits(a.bits()),
        ))
    }

    pub(crate) fn expect_x_subset(&self, a: &VertexSet) -> Result<()> {
        if a.side() != Side::X {
            return Err(Error::SideMismatch {
                expected: Side::X,
                found: a.side(),
            });
        }
        if a.bits() & !self.x_mask() != 0 {
            let index = (a.bits() & !self.x_mask()).trailing_zeros() as usize;
            return Err(Error::OutOfRange {
                side: Side::X,
                index,
                count: self.nx,
            });
        }
        Ok(())
    }

    /// G[A ∪ N̂(A)] with its index map.
    pub fn induced_with_superneighborhood(&self, a: &VertexSet) -> Result<InducedSubgraph> {
        self.expect_x_subset(a)?;
        Ok(self.induced(a.bits(), self.super_neighborhood_bits(a.bits())))
    }

    /// G' = G[X ∪ N̂(X)]: the graph with every y of degree ≤ 1 removed.
    pub fn without_low_degree_y(&self) -> InducedSubgraph {
        self.induced(self.x_mask(), self.super_neighborhood_bits(self.x_mask()))
    }

    /// True iff the graph has at least 3 vertices, is connected, and has no
    /// cut vertex.
    pub fn is_two_connected(&self) -> bool {
        self.two_connected_within(self.x_mask(), self.y_mask())
    }

    /// 2-connectivity of the subgraph induced on the two masks, without
    /// materializing it.
    pub fn two_connected_within(&self, xmask: u64, ymask: u64) -> bool {
        let xmask = xmask & self.x_mask();
        let ymask = ymask & self.y_mask();
        let n = (xmask.count_ones() + ymask.count_ones()) as usize;
        if n < 3 {
            return false;
        }
        let mut dfs = CutSearch {
            g: self,
            xmask,
            ymask,
            disc: [0; 2 * MAX_SIDE],
            low: [0; 2 * MAX_SIDE],
            time: 0,
            visited: 0,
            cut: false,
        };
        let root = if xmask != 0 {
            xmask.trailing_zeros() as usize
        } else {
            MAX_SIDE + ymask.trailing_zeros() as usize
        };
        dfs.time = 1;
        dfs.disc[root] = 1;
        dfs.low[root] = 1;
        dfs.visited = 1;
        let mut children = 0;
        for w in dfs.neighbors(root) {
            if dfs.disc[w] == 0 {
                children += 1;
                dfs.visit(w, root);
                if dfs.cut {
                    return false;
                }
            }
        }
        children == 1 && dfs.visited == n
    }

    /// The hypergraph whose incidence graph this is: one vertex per x, one
    /// edge per y.
    pub fn hypergraph(&self) -> Hypergraph {
        Hypergraph {
            vertex_count: self.nx,
            edges: self.y_adj.clone(),
        }
    }
}

fn compress(word: u64, keep: &[usize]) -> u64 {
    keep.iter()
        .enumerate()
        .filter(|(_, &h)| word >> h & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Articulation-point search (low-link) restricted to a pair of masks.
/// Vertex ids: x-vertex `i` is `i`, y-vertex `j` is `64 + j`.
struct CutSearch<'a> {
    g: &'a Bigraph,
    xmask: u64,
    ymask: u64,
    disc: [u8; 2 * MAX_SIDE],
    low: [u8; 2 * MAX_SIDE],
    time: u8,
    visited: usize,
    cut: bool,
}

impl CutSearch<'_> {
    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        let (word, offset) = if v < MAX_SIDE {
            (self.g.x_adj[v] & self.ymask, MAX_SIDE)
        } else {
            (self.g.y_adj[v - MAX_SIDE] & self.xmask, 0)
        };
        BitIter(word).map(move |i| i + offset)
    }

    fn visit(&mut self, v: usize, parent: usize) {
        self.time += 1;
        self.disc[v] = self.time;
        self.low[v] = self.time;
        self.visited += 1;
        for w in self.neighbors(v) {
            if self.cut {
                return;
            }
            if self.disc[w] == 0 {
                self.visit(w, v);
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    self.cut = true;
                }
            } else if w != parent {
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
    }
}

/// A hypergraph with edges of any size. Repeated edges are distinct edge
/// slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<u64>,
}

impl Hypergraph {
    /// `edges` lists 0-based vertex indices per edge.
    pub fn new(vertex_count: usize, edges: &[Vec<usize>]) -> Result<Self> {
        check_side(Side::X, vertex_count)?;
        check_side(Side::Y, edges.len())?;
        let mut masks = Vec::with_capacity(edges.len());
        for edge in edges {
            let mut m = 0u64;
            for &v in edge {
                if v >= vertex_count {
                    return Err(Error::OutOfRange {
                        side: Side::X,
                        index: v,
                        count: vertex_count,
                    });
                }
                m |= 1 << v;
            }
            masks.push(m);
        }
        Ok(Hypergraph {
            vertex_count,
            edges: masks,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_masks(&self) -> &[u64] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Vec<usize> {
        BitIter(self.edges[i]).collect()
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&e| e >> v & 1 == 1).count()
    }

    /// I(H): X = V(H), Y = E(H), x ~ y iff the vertex lies in the edge.
    pub fn incidence_graph(&self) -> Bigraph {
        Bigraph::from_columns(self.vertex_count, &self.edges).expect("hypergraph within caps")
    }
}
