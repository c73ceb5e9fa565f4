//! Critical, saturated and Y-minimal bigraphs, and critical cores.
//!
//! Critical: (a) the condition holds but the graph is not super-cyclic,
//! (b) N̂(X) = Y, (c) G[X' ∪ Y] is super-cyclic for every proper X' ⊂ X.
//! Clause (c) is evaluated as "every proper A ⊊ X with |A| ≥ 3 has a based
//! cycle": a cycle based on A lives in G[X' ∪ Y] for any X' ⊇ A.

use std::fmt;
use std::str::FromStr;

use crate::bigraph::{Bigraph, InducedSubgraph};
use crate::condition::{check_condition, satisfies_condition, Mode};
use crate::cycle::{is_super_cyclic, minimal_failing_subset};
use crate::error::{Error, Result};
use crate::report::{CheckReport, Witness};
use crate::vertex::{BitIter, Side, VertexSet};

/// Largest edge count for exhaustive Y-minimality.
pub const Y_MINIMAL_EDGE_CAP: usize = 20;

pub fn is_critical(g: &Bigraph) -> CheckReport {
    const NAME: &str = "critical";
    if g.nx() <= 2 {
        return CheckReport::fail(NAME, "clause (a): |X| <= 2, trivially super-cyclic");
    }
    let cond = check_condition(g, Mode::Kim);
    if !cond.passed {
        let w = cond
            .failing_size_witness
            .or(cond.failing_connectivity_witness)
            .expect("failed condition has a witness");
        return CheckReport::fail(NAME, format!("clause (a): condition fails at {w}"))
            .with_witness(Witness::Subset(w));
    }
    let hat = g.super_neighborhood_bits(g.x_mask());
    if hat != g.y_mask() {
        let extra = VertexSet::from_bits(Side::Y, g.y_mask() & !hat);
        return CheckReport::fail(NAME, format!("clause (b): {extra} lie outside N^(X)"))
            .with_witness(Witness::Subset(extra));
    }
    match minimal_failing_subset(g, g.x_mask()) {
        None => CheckReport::fail(NAME, "clause (a): the graph is super-cyclic"),
        Some(s) if s != g.x_mask() => {
            let w = VertexSet::from_bits(Side::X, s);
            CheckReport::fail(NAME, format!("clause (c): proper subset {w} has no based cycle"))
                .with_witness(Witness::Subset(w))
        }
        Some(_) => CheckReport::pass(NAME),
    }
}

fn require_critical(g: &Bigraph, what: &str) -> Result<()> {
    let crit = is_critical(g);
    if crit.passed {
        Ok(())
    } else {
        Err(Error::Precondition {
            message: format!("{what} is only defined for critical graphs"),
            report: Some(Box::new(crit)),
        })
    }
}

/// Adding any absent X,Y-edge makes the graph super-cyclic. Requires a
/// critical input.
pub fn is_saturated(g: &Bigraph) -> Result<CheckReport> {
    require_critical(g, "saturation")?;
    for x in 0..g.nx() {
        for y in BitIter(g.y_mask() & !g.x_neighbors(x)) {
            let h = g.with_edge(x, y)?;
            if !is_super_cyclic(&h).passed {
                return Ok(CheckReport::fail(
                    "saturated",
                    format!("adding x{}y{} leaves it not super-cyclic", x + 1, y + 1),
                )
                .with_witness(Witness::AddedEdge { x, y }));
            }
        }
    }
    Ok(CheckReport::pass("saturated"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YMinimalMode {
    /// Only single-edge and single-y deletions: a necessary test.
    OneDeletion,
    /// Every proper subgraph, including x-vertex deletions.
    Exhaustive,
}

impl FromStr for YMinimalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one" | "one-deletion" => Ok(YMinimalMode::OneDeletion),
            "exhaustive" => Ok(YMinimalMode::Exhaustive),
            other => Err(Error::invalid(format!("unknown Y-minimality mode `{other}`"))),
        }
    }
}

impl fmt::Display for YMinimalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            YMinimalMode::OneDeletion => "one-deletion",
            YMinimalMode::Exhaustive => "exhaustive",
        })
    }
}

fn refutes_minimality(h: &Bigraph) -> bool {
    h.nx() >= 3 && satisfies_condition(h) && !is_super_cyclic(h).passed
}

/// A proper subgraph that satisfies the condition yet is not super-cyclic,
/// if the chosen search finds one. Does not check criticality of `g`.
///
/// Deleting a y-vertex is the same as deleting all its edges for both
/// properties (an isolated y is invisible to them), so the exhaustive search
/// ranges over x-subsets and edge subsets only.
pub fn find_refuting_subgraph(g: &Bigraph, mode: YMinimalMode) -> Result<Option<Bigraph>> {
    match mode {
        YMinimalMode::OneDeletion => {
            for (x, y) in g.edges() {
                let h = g.without_edge(x, y)?;
                if refutes_minimality(&h) {
                    return Ok(Some(h));
                }
            }
            for y in 0..g.ny() {
                let h = g.induced(g.x_mask(), g.y_mask() & !(1 << y)).graph;
                if refutes_minimality(&h) {
                    return Ok(Some(h));
                }
            }
            Ok(None)
        }
        YMinimalMode::Exhaustive => {
            let m = g.edge_count();
            if m > Y_MINIMAL_EDGE_CAP {
                return Err(Error::capacity(format!(
                    "exhaustive Y-minimality is capped at {Y_MINIMAL_EDGE_CAP} edges, graph has {m}"
                )));
            }
            for xs in 0..=g.x_mask() {
                if xs.count_ones() < 3 {
                    continue;
                }
                let sub = g.induced(xs, g.y_mask()).graph;
                let edges: Vec<(usize, usize)> = sub.edges().collect();
                let full = if edges.is_empty() { 0 } else { u32::MAX >> (32 - edges.len()) };
                for keep in 0..=full {
                    if xs == g.x_mask() && keep == full {
                        continue;
                    }
                    let mut rows = vec![0u64; sub.nx()];
                    for i in BitIter(keep as u64) {
                        let (x, y) = edges[i];
                        rows[x] |= 1 << y;
                    }
                    // every x needs two neighbors for the connectivity clause
                    if rows.iter().any(|r| r.count_ones() < 2) {
                        continue;
                    }
                    let h = Bigraph::from_rows(sub.ny(), &rows)?;
                    if refutes_minimality(&h) {
                        return Ok(Some(h));
                    }
                }
            }
            Ok(None)
        }
    }
}

/// Every proper subgraph satisfying the condition is super-cyclic. Requires
/// a critical input. One-deletion mode only tests a necessary condition and
/// marks its report approximate.
pub fn is_y_minimal(g: &Bigraph, mode: YMinimalMode) -> Result<CheckReport> {
    require_critical(g, "Y-minimality")?;
    let name = "Y-minimal";
    let mut report = match find_refuting_subgraph(g, mode)? {
        Some(h) => CheckReport::fail(
            name,
            "a proper subgraph satisfies the condition but is not super-cyclic",
        )
        .with_witness(Witness::Subgraph(h)),
        None => CheckReport::pass(name),
    };
    report = report.with_note(format!("mode: {mode}"));
    match mode {
        YMinimalMode::OneDeletion => report.approximate = true,
        YMinimalMode::Exhaustive => {
            report = report.with_note("proper subgraphs include x-vertex deletions")
        }
    }
    Ok(report)
}

/// `None` if `g` is super-cyclic; otherwise G[A ∪ N̂(A)] for the least
/// inclusion-minimal A without a based cycle, which is critical. Requires
/// the condition to hold.
pub fn find_critical_core(g: &Bigraph) -> Result<Option<InducedSubgraph>> {
    let cond = check_condition(g, Mode::Kim);
    if !cond.passed {
        return Err(Error::Precondition {
            message: format!("critical cores need the condition to hold ({cond})"),
            report: None,
        });
    }
    if g.nx() <= 2 {
        return Ok(None);
    }
    Ok(minimal_failing_subset(g, g.x_mask()).map(|a| g.induced(a, g.super_neighborhood_bits(a))))
}

/// All three classifications, with the later ones only when defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub critical: CheckReport,
    pub saturated: Option<CheckReport>,
    pub y_minimal: Option<CheckReport>,
}

pub fn classify(g: &Bigraph, mode: YMinimalMode) -> Result<Classification> {
    let critical = is_critical(g);
    if !critical.passed {
        return Ok(Classification {
            critical,
            saturated: None,
            y_minimal: None,
        });
    }
    Ok(Classification {
        critical,
        saturated: Some(is_saturated(g)?),
        y_minimal: Some(is_y_minimal(g, mode)?),
    })
}
