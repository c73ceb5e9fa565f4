//! Brute-force reference implementations. They only read a graph through
//! `nx`, `ny` and `has_edge`, and share no code with the library's search
//! routines.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use supercyclic::{BaseCycle, Bigraph, Hypergraph};

/// Plain adjacency lists: x-vertex i is i, y-vertex j is nx + j.
pub struct Plain {
    pub nx: usize,
    pub adj: Vec<Vec<usize>>,
}

impl Plain {
    pub fn new(g: &Bigraph) -> Self {
        let n = g.nx() + g.ny();
        let mut adj = vec![Vec::new(); n];
        for x in 0..g.nx() {
            for y in 0..g.ny() {
                if g.has_edge(x, y) {
                    adj[x].push(g.nx() + y);
                    adj[g.nx() + y].push(x);
                }
            }
        }
        Plain { nx: g.nx(), adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    /// Vertices reachable from `s` avoiding `removed`, restricted to `keep`.
    fn reach(&self, s: usize, keep: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    fn connected(&self, keep: &[bool]) -> bool {
        let Some(s) = (0..self.len()).find(|&v| keep[v]) else {
            return true;
        };
        let seen = self.reach(s, keep);
        (0..self.len()).all(|v| !keep[v] || seen[v])
    }

    /// At least 3 vertices, connected, and connected after deleting any one.
    pub fn two_connected(&self, keep: &[bool]) -> bool {
        let n = keep.iter().filter(|&&k| k).count();
        if n < 3 || !self.connected(keep) {
            return false;
        }
        (0..self.len()).filter(|&v| keep[v]).all(|v| {
            let mut k = keep.to_vec();
            k[v] = false;
            self.connected(&k)
        })
    }
}

pub fn two_connected(g: &Bigraph) -> bool {
    let p = Plain::new(g);
    p.two_connected(&vec![true; p.len()])
}

/// Every simple cycle, as (x-vertex mask, length), each found from its least
/// vertex in both directions.
pub fn all_cycles(g: &Bigraph) -> Vec<(u64, usize)> {
    let p = Plain::new(g);
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 0..p.len() {
        path.clear();
        path.push(s);
        walk(&p, s, &mut path, &mut out);
    }
    out
}

fn walk(p: &Plain, s: usize, path: &mut Vec<usize>, out: &mut Vec<(u64, usize)>) {
    let u = *path.last().unwrap();
    for &w in &p.adj[u] {
        if w == s && path.len() >= 4 {
            let xs = path.iter().filter(|&&v| v < p.nx).fold(0u64, |m, &v| m | 1 << v);
            out.push((xs, path.len()));
        } else if w > s && !path.contains(&w) {
            path.push(w);
            walk(p, s, path, out);
            path.pop();
        }
    }
}

pub fn cycle_x_sets(g: &Bigraph) -> HashSet<u64> {
    all_cycles(g).into_iter().map(|(m, _)| m).collect()
}

pub fn longest_cycle(g: &Bigraph) -> usize {
    all_cycles(g).into_iter().map(|(_, l)| l).max().unwrap_or(0)
}

pub fn super_neighborhood(g: &Bigraph, a: u64) -> u64 {
    (0..g.ny())
        .filter(|&y| (0..g.nx()).filter(|&x| a >> x & 1 == 1 && g.has_edge(x, y)).count() >= 2)
        .fold(0, |m, y| m | 1 << y)
}

pub fn induced_two_connected(g: &Bigraph, xs: u64, ys: u64) -> bool {
    let p = Plain::new(g);
    let keep: Vec<bool> = (0..p.len())
        .map(|v| if v < g.nx() { xs >> v & 1 == 1 } else { ys >> (v - g.nx()) & 1 == 1 })
        .collect();
    p.two_connected(&keep)
}

pub fn subsets_at_least(n: usize, k: usize) -> impl Iterator<Item = u64> {
    (0..1u64 << n).filter(move |a| a.count_ones() as usize >= k)
}

/// The condition straight from its definition; `kim` restricts the
/// connectivity clause to triples.
pub fn condition(g: &Bigraph, kim: bool) -> bool {
    subsets_at_least(g.nx(), 3).all(|a| {
        let hat = super_neighborhood(g, a);
        hat.count_ones() >= a.count_ones()
            && ((kim && a.count_ones() > 3) || induced_two_connected(g, a, hat))
    })
}

pub fn super_cyclic(g: &Bigraph) -> bool {
    let sets = cycle_x_sets(g);
    subsets_at_least(g.nx(), 3).all(|a| sets.contains(&a))
}

/// Berge cycle on exactly the vertex set `a`: v1 e1 v2 ... vk ek v1 with
/// distinct vertices and distinct edges, v_i, v_{i+1} ∈ e_i.
pub fn berge_cycle_on(h: &Hypergraph, a: u64) -> bool {
    let vs: Vec<usize> = (0..h.vertex_count()).filter(|v| a >> v & 1 == 1).collect();
    let k = vs.len();
    let edges = h.edge_masks();
    let mut perm: Vec<usize> = vs[1..].to_vec();
    permutations(&mut perm, 0, &mut |rest| {
        let order: Vec<usize> = std::iter::once(vs[0]).chain(rest.iter().copied()).collect();
        let need: Vec<u64> = (0..k).map(|i| 1u64 << order[i] | 1u64 << order[(i + 1) % k]).collect();
        distinct_edges(edges, &need, 0, &mut vec![false; edges.len()])
    })
}

fn distinct_edges(edges: &[u64], need: &[u64], i: usize, used: &mut Vec<bool>) -> bool {
    if i == need.len() {
        return true;
    }
    for (j, &e) in edges.iter().enumerate() {
        if !used[j] && e & need[i] == need[i] {
            used[j] = true;
            if distinct_edges(edges, need, i + 1, used) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

fn permutations(items: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if i == items.len() {
        return f(items);
    }
    for j in i..items.len() {
        items.swap(i, j);
        if permutations(items, i + 1, f) {
            items.swap(i, j);
            return true;
        }
        items.swap(i, j);
    }
    false
}

pub fn super_pancyclic(h: &Hypergraph) -> bool {
    subsets_at_least(h.vertex_count(), 3).all(|a| berge_cycle_on(h, a))
}

/// Smallest set of vertices other than `x` whose removal leaves no path
/// from `x` to the remaining cycle vertices (cycle vertices may be removed).
pub fn min_fan_cut(g: &Bigraph, x: usize, c: &BaseCycle) -> usize {
    let p = Plain::new(g);
    let on_c: Vec<bool> = (0..p.len())
        .map(|v| {
            if v < g.nx() {
                c.xs().contains(&v)
            } else {
                c.ys().contains(&(v - g.nx()))
            }
        })
        .collect();
    let others: Vec<usize> = (0..p.len()).filter(|&v| v != x).collect();
    for size in 0..=others.len() {
        let mut found = false;
        for_each_combination(others.len(), size, &mut |pick| {
            let mut keep = vec![true; p.len()];
            for &i in pick {
                keep[others[i]] = false;
            }
            let seen = p.reach(x, &keep);
            if !(0..p.len()).any(|v| on_c[v] && keep[v] && seen[v]) {
                found = true;
            }
            found
        });
        if found {
            return size;
        }
    }
    unreachable!("removing every other vertex separates x")
}

fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            if rec(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::new(), f);
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permutations(&mut items, 0, &mut |p| {
        out.push(p.to_vec());
        false
    });
    out
}

/// Number of isomorphism classes of bigraphs with the given side sizes
/// (rows and columns permuted independently), by canonicalizing every
/// labeled graph.
pub fn orbit_count(nx: usize, ny: usize) -> usize {
    let cells = nx * ny;
    let rp = all_perms(nx);
    let cp = all_perms(ny);
    let mut classes = BTreeSet::new();
    for bits in 0..1u64 << cells {
        let mut best = u64::MAX;
        for r in &rp {
            for c in &cp {
                let mut img = 0u64;
                for x in 0..nx {
                    for y in 0..ny {
                        if bits >> (x * ny + y) & 1 == 1 {
                            img |= 1 << (r[x] * ny + c[y]);
                        }
                    }
                }
                best = best.min(img);
            }
        }
        classes.insert(best);
    }
    classes.len()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if !seen[s] {
            let mut len = 0;
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                v = p[v];
                len += 1;
            }
            out.push(len);
        }
    }
    out
}

/// The same count by orbit counting (Burnside): the average over S_nx × S_ny of
/// 2^(cycles on the nx·ny cells).
pub fn burnside_count(nx: usize, ny: usize) -> u128 {
    let rt: Vec<Vec<usize>> = all_perms(nx).iter().map(|p| cycle_type(p)).collect();
    let ct: Vec<Vec<usize>> = all_perms(ny).iter().map(|p| cycle_type(p)).collect();
    let mut total: u128 = 0;
    for a in &rt {
        for b in &ct {
            let cycles: usize = a.iter().flat_map(|&i| b.iter().map(move |&j| gcd(i, j))).sum();
            total += 1u128 << cycles;
        }
    }
    total / (rt.len() * ct.len()) as u128
}

/// Random bigraph with each edge present with probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, nx: usize, ny: usize, p: f64) -> Bigraph {
    let edges: Vec<(usize, usize)> = (0..nx)
        .flat_map(|x| (0..ny).map(move |y| (x, y)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Bigraph::new(nx, ny, edges).unwrap()
}
