//! Fans into a cycle, successor maps on an oriented cycle, and crossings.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::bigraph::Bigraph;
use crate::cycle::BaseCycle;
use crate::error::{Error, Result};
use crate::vertex::{Side, Vertex};

/// An x,C-fan: paths from `root` to distinct vertices of C, pairwise meeting
/// only in `root`, with interiors off C.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub root: usize,
    /// Each path runs root → contact.
    pub paths: Vec<Vec<Vertex>>,
    /// V(C) ∩ V(F), sorted.
    pub contacts: Vec<Vertex>,
}

impl Fan {
    /// t = |T|.
    pub fn size(&self) -> usize {
        self.contacts.len()
    }

    /// |V(F)|, counting the root once. Zero for an empty fan.
    pub fn vertex_count(&self) -> usize {
        if self.paths.is_empty() {
            0
        } else {
            1 + self.paths.iter().map(|p| p.len() - 1).sum::<usize>()
        }
    }

    pub fn validate(&self, g: &Bigraph, c: &BaseCycle) -> Result<()> {
        let root = Vertex::x(self.root);
        let mut seen = vec![root];
        let mut contacts = Vec::new();
        for p in &self.paths {
            if p.first() != Some(&root) || p.len() < 2 {
                return Err(Error::invalid("fan path must start at the root"));
            }
            for w in p.windows(2) {
                if !g.adjacent(w[0], w[1]) {
                    return Err(Error::invalid(format!("{} and {} are not adjacent", w[0], w[1])));
                }
            }
            let (last, interior) = p[1..].split_last().unwrap();
            if !c.contains(*last) || interior.iter().any(|v| c.contains(*v)) {
                return Err(Error::invalid("fan path must meet C exactly at its end"));
            }
            for v in &p[1..] {
                if seen.contains(v) {
                    return Err(Error::invalid(format!("fan paths share {v}")));
                }
                seen.push(*v);
            }
            contacts.push(*last);
        }
        contacts.sort();
        if contacts != self.contacts {
            return Err(Error::invalid("contact list disagrees with the paths"));
        }
        Ok(())
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fan from x{}: t={} |V(F)|={}",
            self.root + 1,
            self.size(),
            self.vertex_count()
        )?;
        for p in &self.paths {
            let s: Vec<String> = p.iter().map(ToString::to_string).collect();
            write!(f, "\n  {}", s.join("-"))?;
        }
        Ok(())
    }
}

struct Arc {
    to: usize,
    cap: i32,
    cost: i32,
}

/// Successive-shortest-path min-cost flow on a small graph.
struct FlowNet {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, from: usize, to: usize, cost: i32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap: 1, cost });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
        });
    }

    /// Pushes unit flow along cheapest residual paths until none is left.
    fn run(&mut self, s: usize, t: usize) -> usize {
        let n = self.out.len();
        let mut flow = 0;
        loop {
            // Bellman-Ford queue variant; residual costs may be negative
            let mut dist = vec![i32::MAX; n];
            let mut via = vec![usize::MAX; n];
            let mut queued = vec![false; n];
            let mut q = VecDeque::new();
            dist[s] = 0;
            q.push_back(s);
            while let Some(u) = q.pop_front() {
                queued[u] = false;
                for &a in &self.out[u] {
                    let arc = &self.arcs[a];
                    if arc.cap > 0 && dist[u] + arc.cost < dist[arc.to] {
                        dist[arc.to] = dist[u] + arc.cost;
                        via[arc.to] = a;
                        if !queued[arc.to] {
                            queued[arc.to] = true;
                            q.push_back(arc.to);
                        }
                    }
                }
            }
            if dist[t] == i32::MAX {
                return flow;
            }
            let mut v = t;
            while v != s {
                let a = via[v];
                self.arcs[a].cap -= 1;
                self.arcs[a ^ 1].cap += 1;
                v = self.arcs[a ^ 1].to;
            }
            flow += 1;
        }
    }
}

/// A maximum x,C-fan, and among those one with the fewest vertices.
///
/// Vertices get unit capacity (split into in/out nodes) and unit cost; the
/// cycle's vertices drain into a common sink, each with capacity one. A
/// min-cost maximum flow from the root is then a largest fan of least total
/// size for this (x, C). A root with no route to C yields the empty fan.
pub fn max_fan(g: &Bigraph, x: usize, c: &BaseCycle) -> Result<Fan> {
    g.check_vertex(Vertex::x(x))?;
    c.validate(g)?;
    if c.contains(Vertex::x(x)) {
        return Err(Error::invalid(format!("x{} lies on the cycle", x + 1)));
    }
    let nx = g.nx();
    let n = nx + g.ny();
    let id = |v: Vertex| match v.side {
        Side::X => v.index,
        Side::Y => nx + v.index,
    };
    let vertex = |i: usize| {
        if i < nx {
            Vertex::x(i)
        } else {
            Vertex::y(i - nx)
        }
    };
    let sink = 2 * n;
    let root = x;
    let mut net = FlowNet::new(2 * n + 1);
    let on_cycle: Vec<bool> = (0..n).map(|i| c.contains(vertex(i))).collect();
    for i in 0..n {
        if i == root {
            continue;
        }
        if on_cycle[i] {
            net.add(2 * i, sink, 1);
        } else {
            net.add(2 * i, 2 * i + 1, 1);
        }
    }
    for i in 0..n {
        if on_cycle[i] {
            continue;
        }
        for w in g.neighbors(vertex(i)) {
            let j = id(w);
            if j != root {
                net.add(2 * i + 1, 2 * j, 0);
            }
        }
    }
    let t = net.run(2 * root + 1, sink);

    // peel the flow into paths
    let saturated = |net: &FlowNet, node: usize| -> Option<usize> {
        net.out[node]
            .iter()
            .copied()
            .find(|&a| a % 2 == 0 && net.arcs[a].cap == 0)
    };
    let mut paths = Vec::with_capacity(t);
    let mut contacts = Vec::with_capacity(t);
    let mut used_first = Vec::new();
    for _ in 0..t {
        let first = net.out[2 * root + 1]
            .iter()
            .copied()
            .find(|&a| a % 2 == 0 && net.arcs[a].cap == 0 && !used_first.contains(&a))
            .expect("flow leaves the root once per path");
        used_first.push(first);
        let mut path = vec![Vertex::x(root)];
        let mut node = net.arcs[first].to;
        loop {
            let v = node / 2;
            path.push(vertex(v));
            if on_cycle[v] {
                contacts.push(vertex(v));
                break;
            }
            let out_node = 2 * v + 1;
            let a = saturated(&net, out_node).expect("unit flow continues");
            node = net.arcs[a].to;
        }
        paths.push(path);
    }
    paths.sort_by_key(|p| *p.last().unwrap());
    contacts.sort();
    Ok(Fan {
        root,
        paths,
        contacts,
    })
}

/// Nearest x- and y-vertices on either side of a cycle vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Successors {
    pub x_plus: Vertex,
    pub x_minus: Vertex,
    pub y_plus: Vertex,
    pub y_minus: Vertex,
}

/// x⁺, x⁻, y⁺, y⁻ for every vertex of an oriented cycle: the closest vertex
/// of the given side, distinct from u, clockwise or counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessorMaps {
    map: BTreeMap<Vertex, Successors>,
}

impl SuccessorMaps {
    pub fn get(&self, u: Vertex) -> Option<Successors> {
        self.map.get(&u).copied()
    }

    pub fn x_plus(&self, u: Vertex) -> Option<Vertex> {
        self.get(u).map(|s| s.x_plus)
    }

    pub fn x_minus(&self, u: Vertex) -> Option<Vertex> {
        self.get(u).map(|s| s.x_minus)
    }

    pub fn y_plus(&self, u: Vertex) -> Option<Vertex> {
        self.get(u).map(|s| s.y_plus)
    }

    pub fn y_minus(&self, u: Vertex) -> Option<Vertex> {
        self.get(u).map(|s| s.y_minus)
    }

    /// X⁺(U) = { x⁺(u) : u ∈ U }, skipping vertices off the cycle.
    pub fn x_plus_set(&self, us: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = us.iter().filter_map(|&u| self.x_plus(u)).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vertex, &Successors)> {
        self.map.iter()
    }
}

pub fn successor_maps(c: &BaseCycle) -> SuccessorMaps {
    let len = c.len();
    let mut map = BTreeMap::new();
    for p in 0..len {
        // on an x the nearest x's are two steps away, on a y one step
        let (dx, dy) = if p % 2 == 0 { (2, 1) } else { (1, 2) };
        map.insert(
            c.at(p),
            Successors {
                x_plus: c.at(p + dx),
                x_minus: c.at(p + len - dx),
                y_plus: c.at(p + dy),
                y_minus: c.at(p + len - dy),
            },
        );
    }
    SuccessorMaps { map }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
    pub u: usize,
    pub v: usize,
    /// x-vertices (sorted) at which u and v cross.
    pub crossed_at: Vec<usize>,
}

impl CrossingReport {
    /// a, the number of crossings.
    pub fn count(&self) -> usize {
        self.crossed_at.len()
    }
}

fn cycle_x_position(c: &BaseCycle, x: usize) -> Result<usize> {
    c.position(Vertex::x(x))
        .ok_or_else(|| Error::invalid(format!("x{} is not on the cycle", x + 1)))
}

/// All x₃ on C where u and v cross: either the cyclic order is u, x₃, v and
/// u ~ y⁺(x₃), v ~ y⁻(x₃), or the cyclic order is u, v, x₃ and
/// u ~ y⁻(x₃), v ~ y⁺(x₃). Adjacency is taken in `g`, not just along C.
pub fn crossings(g: &Bigraph, c: &BaseCycle, u: usize, v: usize) -> Result<CrossingReport> {
    c.validate(g)?;
    if u == v {
        return Err(Error::invalid("crossing pair must be two distinct vertices"));
    }
    let pu = cycle_x_position(c, u)?;
    let pv = cycle_x_position(c, v)?;
    let len = c.len();
    let off_v = (pv + len - pu) % len;
    let mut crossed_at = Vec::new();
    for &w in c.xs() {
        if w == u || w == v {
            continue;
        }
        let pw = c.position(Vertex::x(w)).unwrap();
        let off_w = (pw + len - pu) % len;
        let y_plus = c.at(pw + 1).index;
        let y_minus = c.at(pw + len - 1).index;
        let crossed = if off_w < off_v {
            g.has_edge(u, y_plus) && g.has_edge(v, y_minus)
        } else {
            g.has_edge(u, y_minus) && g.has_edge(v, y_plus)
        };
        if crossed {
            crossed_at.push(w);
        }
    }
    crossed_at.sort_unstable();
    Ok(CrossingReport { u, v, crossed_at })
}

/// Both sides of d_C(u) + d_C(v) ≤ |V(C)|/2 + 2 + a.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingBound {
    /// d_C(u) + d_C(v), neighbors counted on V(C).
    pub degree_sum: usize,
    pub cycle_len: usize,
    pub crossings: usize,
}

impl CrossingBound {
    pub fn holds(&self) -> bool {
        2 * self.degree_sum <= self.cycle_len + 4 + 2 * self.crossings
    }
}

impl fmt::Display for CrossingBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d_C(u) + d_C(v) = {} <= {}/2 + 2 + {} : {}",
            self.degree_sum,
            self.cycle_len,
            self.crossings,
            if self.holds() { "holds" } else { "VIOLATED" }
        )
    }
}

pub fn crossing_bound(g: &Bigraph, c: &BaseCycle, u: usize, v: usize) -> Result<CrossingBound> {
    let report = crossings(g, c, u, v)?;
    let on_c = c.y_bits();
    let d = |x: usize| (g.x_neighbors(x) & on_c).count_ones() as usize;
    Ok(CrossingBound {
        degree_sum: d(u) + d(v),
        cycle_len: c.len(),
        crossings: report.count(),
    })
}

pub fn crossing_bound_holds(g: &Bigraph, c: &BaseCycle, u: usize, v: usize) -> Result<bool> {
    Ok(crossing_bound(g, c, u, v)?.holds())
}
