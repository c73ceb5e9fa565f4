//! Vertex identifiers and fixed-width vertex sets.
//!
//! Indices are 0-based internally. Everything user-facing (display, text
//! formats, CLI arguments) is 1-based, so `Vertex::x(0)` prints as `x1`.

use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, Result};

/// Maximum number of vertices on either side of a bigraph.
pub const MAX_SIDE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Y,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::X => f.write_str("x"),
            Side::Y => f.write_str("y"),
        }
    }
}

/// A vertex of an (X,Y)-bigraph. Ordering puts every x-vertex before every
/// y-vertex, then by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub const fn x(index: usize) -> Self {
        Vertex {
            side: Side::X,
            index,
        }
    }

    pub const fn y(index: usize) -> Self {
        Vertex {
            side: Side::Y,
            index,
        }
    }

    pub fn is_x(&self) -> bool {
        self.side == Side::X
    }

    /// Parses `x3` / `y12` (1-based).
    pub fn parse(token: &str) -> Result<Self> {
        let token = token.trim();
        let (side, rest) = match token.chars().next() {
            Some('x') | Some('X') => (Side::X, &token[1..]),
            Some('y') | Some('Y') => (Side::Y, &token[1..]),
            _ => return Err(Error::invalid(format!("bad vertex token `{token}`"))),
        };
        let one_based: usize = rest
            .parse()
            .map_err(|_| Error::invalid(format!("bad vertex token `{token}`")))?;
        if one_based == 0 {
            return Err(Error::invalid(format!("vertex indices are 1-based: `{token}`")));
        }
        Ok(Vertex {
            side,
            index: one_based - 1,
        })
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side, self.index + 1)
    }
}

/// A subset of one side's vertices, stored as a 64-bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    side: Side,
    bits: u64,
}

impl VertexSet {
    pub const fn empty(side: Side) -> Self {
        VertexSet { side, bits: 0 }
    }

    pub const fn from_bits(side: Side, bits: u64) -> Self {
        VertexSet { side, bits }
    }

    pub fn from_indices(side: Side, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = 0u64;
        for i in indices {
            if i >= MAX_SIDE {
                return Err(Error::OutOfRange {
                    side,
                    index: i,
                    count: MAX_SIDE,
                });
            }
            bits |= 1 << i;
        }
        Ok(VertexSet { side, bits })
    }

    /// Parses a comma-separated list of 1-based indices, e.g. `"1,3,4"`.
    pub fn parse_indices(side: Side, text: &str) -> Result<Self> {
        let mut idx = Vec::new();
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let tok = tok.trim_start_matches(['x', 'X', 'y', 'Y']);
            let v: usize = tok
                .parse()
                .map_err(|_| Error::invalid(format!("bad index `{tok}`")))?;
            if v == 0 {
                return Err(Error::invalid("indices are 1-based"));
            }
            idx.push(v - 1);
        }
        Self::from_indices(side, idx)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        index < MAX_SIDE && self.bits >> index & 1 == 1
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.side == other.side && self.bits & !other.bits == 0
    }

    pub fn iter(&self) -> BitIter {
        BitIter(self.bits)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let side = self.side;
        self.iter().map(move |index| Vertex { side, index })
    }
}

impl fmt::Display for VertexSet {
    /// `{x1,x3}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}{}", self.side, i + 1)?;
        }
        f.write_str("}")
    }
}

/// Iterates the set bit positions of a word in increasing order.
#[derive(Clone, Debug)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for BitIter {}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Visits every `k`-subset of `universe` in lexicographic order of the sorted
/// member lists, stopping early when `f` breaks.
pub fn for_each_k_subset<B>(
    universe: u64,
    k: usize,
    mut f: impl FnMut(u64) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let members: Vec<usize> = BitIter(universe).collect();
    if k > members.len() {
        return ControlFlow::Continue(());
    }
    let mut pos: Vec<usize> = (0..k).collect();
    loop {
        let mask = pos.iter().fold(0u64, |m, &p| m | 1 << members[p]);
        f(mask)?;
        let n = members.len();
        let mut i = k;
        while i > 0 && pos[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return ControlFlow::Continue(());
        }
        pos[i - 1] += 1;
        for j in i..k {
            pos[j] = pos[j - 1] + 1;
        }
    }
}

/// All `k`-subsets of `universe`, in the order of [`for_each_k_subset`].
pub fn k_subsets(universe: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let _ = for_each_k_subset::<()>(universe, k, |m| {
        out.push(m);
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_are_lexicographic() {
        let subs = k_subsets(0b1111, 2);
        let lists: Vec<Vec<usize>> = subs.iter().map(|&m| BitIter(m).collect()).collect();
        assert_eq!(
            lists,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(k_subsets(0b1010_1010, 4).len(), 1);
        assert_eq!(k_subsets(0b111, 0), vec![0]);
        assert!(k_subsets(0b11, 3).is_empty());
    }

    #[test]
    fn k_subset_counts() {
        for n in 0..10usize {
            for k in 0..=n {
                let want = (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(k_subsets(low_mask(n), k).len(), want, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn vertex_round_trip() {
        let v = Vertex::parse("y12").unwrap();
        assert_eq!(v, Vertex::y(11));
        assert_eq!(v.to_string(), "y12");
        assert!(Vertex::parse("x0").is_err());
        assert!(Vertex::parse("z1").is_err());
    }

    #[test]
    fn vertex_set_display() {
        let s = VertexSet::parse_indices(Side::X, "1, 3,4").unwrap();
        assert_eq!(s.to_string(), "{x1,x3,x4}");
        assert_eq!(s.len(), 3);
        assert!(s.contains(2) && !s.contains(1));
    }
}
