//! The necessary condition for super-cyclicity and the degree thresholds.
//!
//! Condition: for every A ⊆ X with |A| ≥ 3, |N̂(A)| ≥ |A| and G[A ∪ N̂(A)]
//! is 2-connected. In [`Mode::Kim`] the connectivity clause is only tested
//! for |A| = 3 (a failing larger A always contains a failing triple).

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::bigraph::Bigraph;
use crate::error::{Error, Result};
use crate::report::Record;
use crate::vertex::{Side, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Full,
    Kim,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Kim => "kim",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Mode::Full),
            "kim" => Ok(Mode::Kim),
            other => Err(Error::invalid(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub passed: bool,
    /// A with |N̂(A)| < |A|.
    pub failing_size_witness: Option<VertexSet>,
    /// A with G[A ∪ N̂(A)] not 2-connected.
    pub failing_connectivity_witness: Option<VertexSet>,
    pub mode: Mode,
}

impl ConditionReport {
    pub fn to_record(&self) -> Record {
        let mut r = Record::new("check", "condition");
        r.push("mode", self.mode);
        r.push("passed", self.passed);
        r.push_opt("size_witness", self.failing_size_witness);
        r.push_opt("connectivity_witness", self.failing_connectivity_witness);
        r
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} condition ({} mode)",
            if self.passed { "PASS" } else { "FAIL" },
            self.mode
        )?;
        if let Some(a) = self.failing_size_witness {
            write!(f, "\n  size clause fails at A = {a}")?;
        }
        if let Some(a) = self.failing_connectivity_witness {
            write!(f, "\n  G[A + N^(A)] is not 2-connected at A = {a}")?;
        }
        Ok(())
    }
}

/// Depth-first walk over the k-subsets of X in lexicographic order, carrying
/// the "seen once" / "seen at least twice" y-masks down from the parent so
/// N̂ costs one word operation per added vertex.
fn walk_k_subsets<B>(
    g: &Bigraph,
    k: usize,
    from: usize,
    a: u64,
    once: u64,
    twice: u64,
    f: &mut impl FnMut(u64, u64) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let chosen = a.count_ones() as usize;
    if chosen == k {
        return f(a, twice);
    }
    let need = k - chosen;
    for x in from..=g.nx().saturating_sub(need) {
        let n = g.x_neighbors(x);
        walk_k_subsets(g, k, x + 1, a | 1 << x, once | n, twice | (once & n), f)?;
    }
    ControlFlow::Continue(())
}

/// Visits all subsets with |A| ≥ 3 by size, then lexicographically.
pub(crate) fn walk_subsets<B>(
    g: &Bigraph,
    mut f: impl FnMut(u64, u64) -> ControlFlow<B>,
) -> ControlFlow<B> {
    for k in 3..=g.nx() {
        walk_k_subsets(g, k, 0, 0, 0, 0, &mut f)?;
    }
    ControlFlow::Continue(())
}

/// Decides the condition. Stops at the first failing A in size-then-
/// lexicographic order and reports every clause that fails at that A.
/// Passes vacuously when |X| < 3.
pub fn check_condition(g: &Bigraph, mode: Mode) -> ConditionReport {
    let flow = walk_subsets(g, |a, hat| {
        let k = a.count_ones();
        let size_ok = hat.count_ones() >= k;
        let conn_ok = if mode == Mode::Full || k == 3 {
            g.two_connected_within(a, hat)
        } else {
            true
        };
        if size_ok && conn_ok {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break((a, size_ok, conn_ok))
        }
    });
    let mut report = ConditionReport {
        passed: true,
        failing_size_witness: None,
        failing_connectivity_witness: None,
        mode,
    };
    if let ControlFlow::Break((a, size_ok, conn_ok)) = flow {
        let set = VertexSet::from_bits(Side::X, a);
        report.passed = false;
        if !size_ok {
            report.failing_size_witness = Some(set);
        }
        if !conn_ok {
            report.failing_connectivity_witness = Some(set);
        }
    }
    report
}

/// Convenience for filters: does the graph satisfy the condition?
pub fn satisfies_condition(g: &Bigraph) -> bool {
    check_condition(g, Mode::Kim).passed
}

/// min over |A| ≥ 3 of |N̂(A)| − |A|, with the least minimizing A (by size,
/// then lexicographic). Requires |X| ≥ 3.
pub fn min_deficiency(g: &Bigraph) -> Result<(i64, VertexSet)> {
    if g.nx() < 3 {
        return Err(Error::invalid(format!(
            "deficiency is defined for |X| >= 3, got {}",
            g.nx()
        )));
    }
    let mut best: Option<(i64, u64)> = None;
    let _ = walk_subsets::<()>(g, |a, hat| {
        let d = hat.count_ones() as i64 - a.count_ones() as i64;
        if best.map_or(true, |(b, _)| d < b) {
            best = Some((d, a));
        }
        ControlFlow::Continue(())
    });
    let (d, a) = best.expect("|X| >= 3 gives at least one subset");
    Ok((d, VertexSet::from_bits(Side::X, a)))
}

/// Minimum-degree hypotheses of the sufficient conditions, with n = |X|,
/// m = |Y| and δ the minimum x-degree. All comparisons are exact integer
/// arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeFlags {
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    /// δ ≥ max{n, (m+2)/2}
    pub half: bool,
    /// δ ≥ max{n, (m+5)/3}
    pub third: bool,
    /// δ ≥ max{n, (m+10)/4}
    pub quarter: bool,
}

impl DegreeFlags {
    pub fn to_record(&self) -> Record {
        let mut r = Record::new("check", "degree");
        r.push("n", self.n)
            .push("m", self.m)
            .push("delta", self.delta)
            .push("half", self.half)
            .push("third", self.third)
            .push("quarter", self.quarter);
        r
    }
}

impl fmt::Display for DegreeFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "degrees: n={} m={} delta={}\n  delta >= max(n, (m+2)/2): {}\n  delta >= max(n, (m+5)/3): {}\n  delta >= max(n, (m+10)/4): {}",
            self.n,
            self.m,
            self.delta,
            yn(self.half),
            yn(self.third),
            yn(self.quarter)
        )
    }
}

pub fn degree_flags(n: usize, m: usize, delta: usize) -> DegreeFlags {
    let at_least_n = delta >= n;
    DegreeFlags {
        n,
        m,
        delta,
        half: at_least_n && 2 * delta >= m + 2,
        third: at_least_n && 3 * delta >= m + 5,
        quarter: at_least_n && 4 * delta >= m + 10,
    }
}

pub fn degree_hypothesis(g: &Bigraph) -> DegreeFlags {
    degree_flags(g.nx(), g.ny(), g.min_x_degree())
}
