//! Exhaustive and randomized verification campaigns, the audit of critical
//! graph properties, and the counterexample hunt.
//!
//! Exhaustive campaigns split the enumeration into shards, process shards
//! on a worker pool, and merge outcomes in shard order, so reports do not
//! depend on the number of workers. Random hunts give worker `w` the seed
//! `seed + w`; their reports are reproducible for a fixed worker count.

use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigraph::Bigraph;
use crate::checkpoint::Checkpoint;
use crate::classify::{find_critical_core, find_refuting_subgraph, is_critical, is_saturated, YMinimalMode, Y_MINIMAL_EDGE_CAP};
use crate::condition::{check_condition, degree_hypothesis, satisfies_condition, Mode};
use crate::cycle::{based_cycle_bits, BaseCycle, is_k_cyclic, is_super_cyclic};
use crate::error::{Error, Result};
use crate::format::write_bigraph;
use crate::generators::{EnumFilter, EnumPlan, Shard, ENUM_MAX_NX};
use crate::par::map_ordered;
use crate::report::{CheckReport, Record};
use crate::structure::max_fan;
use crate::vertex::{BitIter, Side, VertexSet, MAX_SIDE};

/// One failed check on one graph. `extra` carries attachments such as the
/// critical core and audit output of a hunt hit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub graph: Bigraph,
    pub check: String,
    pub witness: String,
    pub details: String,
    pub extra: Vec<(String, String)>,
}

impl Violation {
    fn new(graph: &Bigraph, check: impl Into<String>, witness: impl fmt::Display, details: impl Into<String>) -> Self {
        Violation {
            graph: graph.clone(),
            check: check.into(),
            witness: witness.to_string(),
            details: details.into(),
            extra: Vec::new(),
        }
    }

    fn from_check(graph: &Bigraph, r: &CheckReport) -> Self {
        let witness = r.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        Violation::new(graph, r.check.clone(), witness, r.reason.clone().unwrap_or_default())
    }

    pub fn to_record(&self) -> Record {
        let mut r = Record::new("violation", &self.check);
        r.push("graph", write_bigraph(&self.graph))
            .push("witness", &self.witness)
            .push("details", &self.details);
        for (k, v) in &self.extra {
            r.push(format!("extra.{k}"), v);
        }
        r
    }

    pub fn from_record(r: &Record) -> Result<Self> {
        let field = |k: &str| {
            r.get(k)
                .map(str::to_string)
                .ok_or_else(|| Error::invalid(format!("violation record lacks `{k}`")))
        };
        Ok(Violation {
            graph: crate::format::parse_bigraph(&field("graph")?)?,
            check: field("violation")?,
            witness: field("witness")?,
            details: field("details")?,
            extra: r
                .fields()
                .iter()
                .filter_map(|(k, v)| k.strip_prefix("extra.").map(|k| (k.to_string(), v.clone())))
                .collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub campaign: String,
    pub parameters: Vec<(String, String)>,
    /// Graphs produced by the generator (classes, trials, or 1 for an audit).
    pub graphs_enumerated: u64,
    /// Graphs meeting the campaign's hypothesis and actually tested.
    pub graphs_examined: u64,
    pub violations: Vec<Violation>,
    pub diagnostics: Vec<String>,
    /// Nothing met the hypothesis, so the claim holds without content.
    pub vacuous: bool,
    pub elapsed: Duration,
    pub deterministic: bool,
}

impl VerificationReport {
    fn new(campaign: &str, parameters: Vec<(String, String)>) -> Self {
        VerificationReport {
            campaign: campaign.to_string(),
            parameters,
            graphs_enumerated: 0,
            graphs_examined: 0,
            violations: Vec::new(),
            diagnostics: Vec::new(),
            vacuous: false,
            elapsed: Duration::ZERO,
            deterministic: true,
        }
    }

    /// The campaign found nothing contradicting its claim.
    pub fn confirmed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn parameter(&self, key: &str) -> Option<&str> {
        self.parameters
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// The header record followed by one record per violation. Without
    /// `timing` the text is identical across reruns.
    pub fn to_machine(&self, timing: bool) -> String {
        let mut head = Record::new("report", &self.campaign);
        for (k, v) in &self.parameters {
            head.push(format!("param.{k}"), v);
        }
        head.push("graphs_enumerated", self.graphs_enumerated)
            .push("graphs_examined", self.graphs_examined)
            .push("violations", self.violations.len())
            .push("confirmed", self.confirmed())
            .push("vacuous", self.vacuous)
            .push("deterministic", self.deterministic);
        if timing {
            head.push("elapsed_ms", self.elapsed.as_millis());
        }
        for d in &self.diagnostics {
            head.push("diagnostic", d);
        }
        let mut out = head.to_string();
        for v in &self.violations {
            out.push_str(&v.to_record().to_string());
        }
        out
    }

    /// Human-readable summary, optionally with timing.
    pub fn to_text(&self, timing: bool) -> String {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut out = format!(
            "{} {} ({})\n  enumerated: {}\n  examined: {}\n  violations: {}\n",
            if self.confirmed() { "CONFIRMED" } else { "REFUTED" },
            self.campaign,
            params.join(" "),
            self.graphs_enumerated,
            self.graphs_examined,
            self.violations.len()
        );
        if self.vacuous {
            out.push_str("  vacuous: no graph met the hypothesis\n");
        }
        if timing {
            out.push_str(&format!("  elapsed: {:.3}s\n", self.elapsed.as_secs_f64()));
        }
        for d in &self.diagnostics {
            out.push_str(&format!("  diagnostic: {d}\n"));
        }
        for v in &self.violations {
            out.push_str(&format!("  violation: {} witness={} {}\n", v.check, v.witness, v.details));
            for line in write_bigraph(&v.graph).lines() {
                out.push_str(&format!("    {line}\n"));
            }
            for (k, val) in &v.extra {
                out.push_str(&format!("    {k}:\n"));
                for line in val.lines() {
                    out.push_str(&format!("      {line}\n"));
                }
            }
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

/// Worker count and checkpointing for a campaign.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CampaignOptions {
    /// 0 uses every available core; 1 runs sequentially.
    pub jobs: usize,
    /// Save progress after at least this many generated graphs; 0 disables
    /// checkpointing.
    pub checkpoint_every: u64,
    /// Overrides `SUPERCYCLIC_CHECKPOINT_DIR`.
    pub checkpoint_dir: Option<PathBuf>,
}

impl CampaignOptions {
    pub fn sequential() -> Self {
        CampaignOptions {
            jobs: 1,
            ..Default::default()
        }
    }
}

/// Partial result for one shard (or one random-hunt worker).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Outcome {
    pub enumerated: u64,
    pub examined: u64,
    pub violations: Vec<Violation>,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn absorb(&mut self, other: Outcome) {
        self.enumerated += other.enumerated;
        self.examined += other.examined;
        self.violations.extend(other.violations);
        self.diagnostics.extend(other.diagnostics);
    }
}

fn params(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Runs `visit` on every canonical class of `plan` accepted by its filter.
/// `visit` returns whether the graph met the hypothesis (was examined).
fn run_exhaustive<F>(
    report: &mut VerificationReport,
    plan: &EnumPlan,
    opts: &CampaignOptions,
    visit: F,
) -> Result<()>
where
    F: Fn(&Bigraph, &mut Outcome) -> bool + Sync + Send,
{
    let filter = plan.filter();
    let run_shard = |shard: &Shard| {
        let mut out = Outcome::default();
        for g in plan.shard_iter(*shard, None) {
            out.enumerated += 1;
            if filter.accepts(&g) && visit(&g, &mut out) {
                out.examined += 1;
            }
        }
        out
    };
    let shards = plan.shards();
    let mut total = Outcome::default();
    if opts.checkpoint_every == 0 {
        for o in map_ordered(opts.jobs, &shards, run_shard) {
            total.absorb(o);
        }
    } else {
        let mut ck = Checkpoint::open(opts.checkpoint_dir.as_deref(), &report.campaign, &report.parameters)?;
        let batch = opts.jobs.max(1) * 4;
        let mut since_save = 0u64;
        let pending: Vec<Shard> = shards.iter().copied().filter(|s| !ck.has(*s)).collect();
        for chunk in pending.chunks(batch) {
            for (s, o) in chunk.iter().zip(map_ordered(opts.jobs, chunk, run_shard)) {
                since_save += o.enumerated;
                ck.insert(*s, o);
            }
            if since_save >= opts.checkpoint_every {
                ck.save()?;
                since_save = 0;
            }
        }
        ck.save()?;
        for s in &shards {
            total.absorb(ck.get(*s).cloned().unwrap_or_default());
        }
    }
    report.graphs_enumerated = total.enumerated;
    report.graphs_examined = total.examined;
    report.violations = total.violations;
    report.diagnostics.extend(total.diagnostics);
    Ok(())
}

/// Every graph with |X| = nx, |Y| ≤ ny_max satisfying the condition is
/// k-cyclic. Requires 3 ≤ k ≤ nx ≤ 6.
pub fn verify_k_cyclic(nx: usize, ny_max: usize, k: usize, opts: &CampaignOptions) -> Result<VerificationReport> {
    if !(3 <= k && k <= nx && nx <= ENUM_MAX_NX) {
        return Err(Error::invalid(format!(
            "need 3 <= k <= nx <= {ENUM_MAX_NX}, got k={k}, nx={nx}"
        )));
    }
    let start = Instant::now();
    let filter = EnumFilter {
        condition: true,
        ..Default::default()
    };
    let plan = EnumPlan::new(nx, ny_max, filter)?;
    let mut report = VerificationReport::new(
        "verify-kcyclic",
        params(&[("nx", nx.to_string()), ("ny_max", ny_max.to_string()), ("k", k.to_string())]),
    );
    run_exhaustive(&mut report, &plan, opts, |g, out| {
        let r = is_k_cyclic(g, k).expect("k is within range");
        if !r.passed {
            out.violations.push(Violation::from_check(g, &r));
        }
        true
    })?;
    report.vacuous = report.graphs_examined == 0;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Every graph satisfying the condition with δ ≥ max{n, (m+10)/4} is
/// super-cyclic, over the enumeration range.
pub fn verify_degree_theorem(nx: usize, ny_max: usize, opts: &CampaignOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    // the hypothesis forces δ ≥ n, so lower-degree classes are skipped early
    let filter = EnumFilter {
        min_x_degree: nx,
        ..Default::default()
    };
    let plan = EnumPlan::new(nx, ny_max, filter)?;
    let mut report = VerificationReport::new(
        "verify-degree",
        params(&[("nx", nx.to_string()), ("ny_max", ny_max.to_string())]),
    );
    run_exhaustive(&mut report, &plan, opts, |g, out| {
        if !degree_hypothesis(g).quarter || !satisfies_condition(g) {
            return false;
        }
        let r = is_super_cyclic(g);
        if !r.passed {
            out.violations.push(Violation::from_check(g, &r));
            consistency_triangle(g, out);
        }
        true
    })?;
    report.vacuous = report.graphs_examined == 0;
    if report.vacuous {
        report
            .diagnostics
            .push("vacuous: no graph in range meets the degree hypothesis".to_string());
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HuntMode {
    Exhaustive,
    Random { seed: u64, trials: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HuntConfig {
    pub nx: usize,
    pub ny_max: usize,
    pub mode: HuntMode,
}

/// Searches for a graph that satisfies the condition but is not
/// super-cyclic. A hit is reported as a violation carrying the graph, the
/// failing subset, its critical core and audits of the core and of the
/// graph with its degree-1 y-vertices removed.
pub fn hunt_counterexample(config: HuntConfig, opts: &CampaignOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let HuntConfig { nx, ny_max, mode } = config;
    let mut report = match mode {
        HuntMode::Exhaustive => {
            let filter = EnumFilter {
                condition: true,
                ..Default::default()
            };
            let plan = EnumPlan::new(nx, ny_max, filter)?;
            let mut report = VerificationReport::new(
                "hunt",
                params(&[
                    ("nx", nx.to_string()),
                    ("ny_max", ny_max.to_string()),
                    ("mode", "exhaustive".to_string()),
                ]),
            );
            run_exhaustive(&mut report, &plan, opts, |g, out| {
                hunt_visit(g, out);
                true
            })?;
            report
        }
        HuntMode::Random { seed, trials } => {
            if nx < 3 || nx > MAX_SIDE || ny_max == 0 || ny_max > MAX_SIDE {
                return Err(Error::invalid(format!(
                    "random hunts need 3 <= nx <= {MAX_SIDE} and 1 <= ny_max <= {MAX_SIDE}"
                )));
            }
            let workers = if opts.jobs == 0 {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            } else {
                opts.jobs
            };
            let mut report = VerificationReport::new(
                "hunt",
                params(&[
                    ("nx", nx.to_string()),
                    ("ny_max", ny_max.to_string()),
                    ("mode", "random".to_string()),
                    ("seed", seed.to_string()),
                    ("trials", trials.to_string()),
                    ("workers", workers.to_string()),
                ]),
            );
            let plan: Vec<(u64, u64)> = (0..workers as u64)
                .map(|w| {
                    let share = trials / workers as u64 + u64::from(w < trials % workers as u64);
                    (seed.wrapping_add(w), share)
                })
                .collect();
            let mut total = Outcome::default();
            for o in map_ordered(opts.jobs, &plan, |&(s, n)| random_worker(nx, ny_max, s, n)) {
                total.absorb(o);
            }
            report.graphs_enumerated = total.enumerated;
            report.graphs_examined = total.examined;
            report.violations = total.violations;
            report.diagnostics = total.diagnostics;
            report
        }
    };
    report.vacuous = report.graphs_examined == 0;
    report.elapsed = start.elapsed();
    Ok(report)
}

fn hunt_visit(g: &Bigraph, out: &mut Outcome) {
    let r = is_super_cyclic(g);
    if r.passed {
        return;
    }
    let mut v = Violation::from_check(g, &r);
    v.details = "satisfies the condition but is not super-cyclic".to_string();
    if let Ok(Some(core)) = find_critical_core(g) {
        v.extra.push(("core".to_string(), write_bigraph(&core.graph)));
        v.extra.push((
            "audit.core".to_string(),
            audit_critical_properties(&core.graph).to_machine(false),
        ));
        let reduced = g.without_low_degree_y().graph;
        v.extra.push((
            "audit.reduced".to_string(),
            audit_critical_properties(&reduced).to_machine(false),
        ));
        for d in fan_diagnostics(&core.graph) {
            out.diagnostics.push(d);
        }
    }
    out.violations.push(v);
    consistency_triangle(g, out);
}

/// (condition ∧ not super-cyclic) ⇒ a core exists ⇒ the core is critical.
fn consistency_triangle(g: &Bigraph, out: &mut Outcome) {
    match find_critical_core(g) {
        Ok(Some(core)) => {
            let r = is_critical(&core.graph);
            if !r.passed {
                out.violations.push(Violation::new(
                    g,
                    "consistency",
                    VertexSet::from_bits(Side::X, core.x_map.iter().fold(0, |m, &x| m | 1 << x)),
                    format!("critical core is not critical: {}", r.reason.unwrap_or_default()),
                ));
            }
        }
        Ok(None) => out.violations.push(Violation::new(
            g,
            "consistency",
            "",
            "not super-cyclic, yet no critical core was found",
        )),
        Err(e) => out.violations.push(Violation::new(g, "consistency", "", e.to_string())),
    }
}

/// For each x of a critical graph, the largest fan from x into the least
/// cycle based on X − x, compared with ℓ − 2. Informational only.
fn fan_diagnostics(g: &Bigraph) -> Vec<String> {
    let mut out = Vec::new();
    for x in 0..g.nx() {
        if let Some(c) = based_cycle_bits(g, g.x_mask() & !(1 << x)) {
            if let Ok(fan) = max_fan(g, x, &c) {
                let l = c.half_len();
                out.push(format!(
                    "fan from x{} into {c}: size {}, half-length {l}, size <= half-length - 2: {}",
                    x + 1,
                    fan.size(),
                    fan.size() + 2 <= l
                ));
            }
        }
    }
    out
}

/// Sparse graph pushed toward the boundary of the condition: y-vertices
/// start with two or three neighbors, then y-vertices outside N̂(A) are
/// wired to two members of the failing A until the condition holds.
fn random_boundary_graph(rng: &mut ChaCha8Rng, nx: usize, ny_max: usize) -> Option<Bigraph> {
    let ny = if ny_max > nx { rng.gen_range(nx..=ny_max) } else { ny_max };
    let xs: Vec<usize> = (0..nx).collect();
    let mut cols = vec![0u64; ny];
    for col in cols.iter_mut() {
        let d = rng.gen_range(2..=3).min(nx);
        for &x in xs.choose_multiple(rng, d) {
            *col |= 1 << x;
        }
    }
    let mut g = Bigraph::from_columns(nx, &cols).ok()?;
    for _ in 0..nx * ny {
        let cond = check_condition(&g, Mode::Kim);
        if cond.passed {
            return Some(g);
        }
        let a = cond
            .failing_size_witness
            .or(cond.failing_connectivity_witness)?
            .bits();
        let outside: Vec<usize> = BitIter(g.y_mask() & !g.super_neighborhood_bits(a)).collect();
        let members: Vec<usize> = BitIter(a).collect();
        let &y = outside.choose(rng)?;
        for &x in members.choose_multiple(rng, 2) {
            g = g.with_edge(x, y).ok()?;
        }
    }
    None
}

fn random_worker(nx: usize, ny_max: usize, seed: u64, trials: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Outcome::default();
    for _ in 0..trials {
        out.enumerated += 1;
        if let Some(g) = random_boundary_graph(&mut rng, nx, ny_max) {
            out.examined += 1;
            hunt_visit(&g, &mut out);
        }
    }
    out
}

/// The least cycle based on `a`, allowing |a| = 2 (a 4-cycle).
fn least_cycle_through(g: &Bigraph, a: u64) -> Option<BaseCycle> {
    if a.count_ones() >= 3 {
        return based_cycle_bits(g, a);
    }
    let xs: Vec<usize> = BitIter(a).collect();
    let [u, v] = xs[..] else { return None };
    let mut common = BitIter(g.x_neighbors(u) & g.x_neighbors(v));
    let (y1, y2) = (common.next()?, common.next()?);
    BaseCycle::new(g, vec![u, v], vec![y1, y2]).ok()
}

/// Which classifications the audit may assume. Normally computed by
/// [`audit_critical_properties`]; passing them by hand lets a caller audit a
/// hypothetical graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AuditAssumptions {
    pub critical: bool,
    pub saturated: bool,
    /// `None` when Y-minimality could not be decided.
    pub y_minimal: Option<bool>,
}

/// Evaluates the structural consequences of criticality, each gated on its
/// hypotheses. Any violated conclusion means one of the classifications is
/// wrong; the violation names which. Non-critical input gives a vacuous
/// report.
pub fn audit_critical_properties(g: &Bigraph) -> VerificationReport {
    let critical = is_critical(g).passed;
    let mut assumptions = AuditAssumptions {
        critical,
        ..Default::default()
    };
    let mut notes = Vec::new();
    if critical {
        assumptions.saturated = is_saturated(g).map(|r| r.passed).unwrap_or(false);
        assumptions.y_minimal = if g.edge_count() <= Y_MINIMAL_EDGE_CAP {
            find_refuting_subgraph(g, YMinimalMode::Exhaustive)
                .ok()
                .map(|h| h.is_none())
        } else {
            notes.push(format!(
                "Y-minimality undecided: more than {Y_MINIMAL_EDGE_CAP} edges; dependent checks skipped"
            ));
            None
        };
    }
    let mut report = audit_with_assumptions(g, assumptions);
    report.diagnostics.extend(notes);
    report
}

pub fn audit_with_assumptions(g: &Bigraph, a: AuditAssumptions) -> VerificationReport {
    let start = Instant::now();
    let yn = |b: bool| b.to_string();
    let mut report = VerificationReport::new(
        "audit",
        params(&[
            ("critical", yn(a.critical)),
            ("saturated", yn(a.saturated)),
            ("y_minimal", a.y_minimal.map_or("undecided".to_string(), yn)),
        ]),
    );
    report.graphs_enumerated = 1;
    if !a.critical || g.nx() < 3 {
        report.vacuous = true;
        report.diagnostics.push("vacuous: the graph is not critical".to_string());
        return report;
    }
    report.graphs_examined = 1;
    let mut viol = |check: &str, witness: String, details: String, blame: &str| {
        report.violations.push(Violation::new(
            g,
            check,
            witness,
            format!("{details}; contradicts: {blame}"),
        ));
    };
    let nx = g.nx();
    let x_all = g.x_mask();
    let xname = |x: usize| format!("x{}", x + 1);

    for x in 0..nx {
        for x2 in x + 1..nx {
            if g.x_neighbors(x) & g.x_neighbors(x2) == 0 {
                viol("common-neighbor", format!("{{{},{}}}", xname(x), xname(x2)), "no common neighbor".into(), "critical");
            }
        }
    }
    if !g.is_two_connected() {
        viol("two-connected", String::new(), "graph is not 2-connected".into(), "critical");
    }

    for x0 in 0..nx {
        let Some(c) = least_cycle_through(g, x_all & !(1 << x0)) else {
            viol(
                "cycle-without-vertex",
                xname(x0),
                format!("no cycle based on X - {}", xname(x0)),
                "critical",
            );
            continue;
        };
        let k = c.half_len();
        let outside = g.y_mask() & !c.y_bits();
        let n0 = g.x_neighbors(x0);
        let xs = c.xs();
        let ys = c.ys();
        let common_out = |u: usize, v: usize| g.x_neighbors(u) & g.x_neighbors(v) & outside;
        let hits: Vec<usize> = (0..k).filter(|&i| n0 >> ys[i] & 1 == 1).collect();
        for (p, &i) in hits.iter().enumerate() {
            for &j in &hits[p + 1..] {
                for (u, v) in [(xs[i], xs[j]), (xs[(i + 1) % k], xs[(j + 1) % k])] {
                    if common_out(u, v) != 0 {
                        viol(
                            "no-common-neighbor-pair",
                            format!("{{{},{}}}", xname(u), xname(v)),
                            format!("common neighbor outside {c} while {} sees y{} and y{}", xname(x0), ys[i] + 1, ys[j] + 1),
                            "critical",
                        );
                    }
                }
            }
            for u in [xs[i], xs[(i + 1) % k]] {
                if common_out(u, x0) != 0 {
                    viol(
                        "no-common-neighbor-root",
                        format!("{{{},{}}}", xname(u), xname(x0)),
                        format!("common neighbor outside {c} next to y{}", ys[i] + 1),
                        "critical",
                    );
                }
            }
        }
        for i in 0..k {
            let here = common_out(xs[i], x0);
            let next = common_out(xs[(i + 1) % k], x0);
            if BitIter(here).any(|y| next & !(1 << y) != 0) {
                viol(
                    "consecutive-root-neighbors",
                    format!("{{{},{}}}", xname(xs[i]), xname(xs[(i + 1) % k])),
                    format!("distinct common neighbors with {} outside {c}", xname(x0)),
                    "critical",
                );
            }
        }
        if (n0 & c.y_bits()).count_ones() < 2 {
            viol(
                "two-neighbors-on-cycle",
                xname(x0),
                format!("fewer than two neighbors on {c}"),
                "critical",
            );
        }
        if a.saturated && a.y_minimal == Some(true) && (c.y_bits() & !n0).count_ones() < 2 {
            viol(
                "two-non-neighbors-on-cycle",
                xname(x0),
                format!("fewer than two non-neighbors among the y-vertices of {c}"),
                "saturated, Y-minimal",
            );
        }
    }

    if a.saturated {
        for y in 0..g.ny() {
            let d = g.y_neighbors(y).count_ones() as usize;
            if d + 1 == nx {
                viol("no-y-missing-one", format!("y{}", y + 1), format!("degree |X| - 1 = {d}"), "saturated");
            }
            if d + 2 == nx {
                viol("no-y-missing-two", format!("y{}", y + 1), format!("degree |X| - 2 = {d}"), "saturated");
            }
        }
        for x0 in 0..nx {
            if g.x_neighbors(x0).count_ones() != 2 {
                continue;
            }
            for y in BitIter(g.x_neighbors(x0)) {
                if g.y_neighbors(y) != x_all {
                    viol(
                        "degree-two-x-neighbors",
                        format!("y{}", y + 1),
                        format!("neighbor of degree-2 vertex {} misses part of X", xname(x0)),
                        "saturated",
                    );
                }
            }
            for x in (0..nx).filter(|&x| x != x0) {
                if g.x_neighbors(x).count_ones() < 4 {
                    viol(
                        "degree-two-x-others",
                        xname(x),
                        format!("degree below 4 while {} has degree 2", xname(x0)),
                        "saturated",
                    );
                }
            }
        }
        if nx == 6 && (0..nx).all(|x| g.x_neighbors(x).count_ones() < 4) {
            viol("degree-four-x", String::new(), "|X| = 6 and every x has degree at most 3".into(), "saturated");
        }
    }

    if a.saturated && a.y_minimal == Some(true) {
        let twos: Vec<usize> = (0..g.ny())
            .filter(|&y| g.y_neighbors(y).count_ones() == 2)
            .collect();
        for (p, &y1) in twos.iter().enumerate() {
            for &y2 in &twos[p + 1..] {
                if g.y_neighbors(y1) == g.y_neighbors(y2) {
                    viol(
                        "distinct-degree-two-y",
                        format!("{{y{},y{}}}", y1 + 1, y2 + 1),
                        "same neighborhood".into(),
                        "saturated, Y-minimal",
                    );
                }
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_bipartite, construct_g3};

    fn seq() -> CampaignOptions {
        CampaignOptions::sequential()
    }

    #[test]
    fn kcyclic_small_runs_clean() {
        let r = verify_k_cyclic(3, 4, 3, &seq()).unwrap();
        assert!(r.confirmed());
        assert!(r.graphs_examined > 0);
        assert!(r.graphs_enumerated > r.graphs_examined);
        assert!(r.deterministic);
    }

    #[test]
    fn kcyclic_preconditions() {
        assert!(verify_k_cyclic(3, 4, 4, &seq()).is_err());
        assert!(verify_k_cyclic(3, 4, 2, &seq()).is_err());
        assert!(matches!(verify_k_cyclic(4, 9, 3, &seq()), Err(Error::Capacity(_))));
    }

    #[test]
    fn degree_theorem_three_is_not_vacuous() {
        // δ = 4 ≥ n = 3 with m ≤ 6 meets the hypothesis, e.g. K_{3,4}
        assert!(degree_hypothesis(&complete_bipartite(3, 4).unwrap()).quarter);
        let r = verify_degree_theorem(3, 8, &seq()).unwrap();
        assert!(r.confirmed());
        assert!(!r.vacuous);
        assert!(r.graphs_examined > 0);
        let r = verify_degree_theorem(3, 3, &seq()).unwrap();
        assert!(r.vacuous && r.confirmed());
    }

    #[test]
    fn degree_theorem_four_five() {
        let r = verify_degree_theorem(4, 5, &seq()).unwrap();
        assert!(r.confirmed());
        assert!(!r.vacuous);
    }

    #[test]
    fn audit_is_vacuous_off_critical() {
        for g in [complete_bipartite(3, 3).unwrap(), construct_g3(1, 1, 1, 3).unwrap()] {
            let r = audit_critical_properties(&g);
            assert!(r.vacuous);
            assert!(r.confirmed());
            assert_eq!(r.graphs_examined, 0);
        }
    }

    #[test]
    fn audit_flags_a_y_missing_one_vertex() {
        // K_{3,3} with one y made to miss x3: degree |X| - 1
        let g = complete_bipartite(3, 3).unwrap().without_edge(2, 0).unwrap();
        let r = audit_with_assumptions(
            &g,
            AuditAssumptions {
                critical: true,
                saturated: true,
                y_minimal: None,
            },
        );
        assert!(!r.confirmed());
        let v = r.violations.iter().find(|v| v.check == "no-y-missing-one").unwrap();
        assert_eq!(v.witness, "y1");
        assert!(v.details.contains("saturated"));
    }

    #[test]
    fn violation_records_round_trip() {
        let mut v = Violation::new(&complete_bipartite(2, 3).unwrap(), "3-cyclic", "{x1}", "because");
        v.extra.push(("core".into(), "p bigraph 1 1\ne 1 1\n".into()));
        assert_eq!(Violation::from_record(&v.to_record()).unwrap(), v);
    }

    #[test]
    fn machine_report_is_stable() {
        let a = hunt_counterexample(
            HuntConfig { nx: 3, ny_max: 4, mode: HuntMode::Exhaustive },
            &seq(),
        )
        .unwrap();
        let b = hunt_counterexample(
            HuntConfig { nx: 3, ny_max: 4, mode: HuntMode::Exhaustive },
            &CampaignOptions { jobs: 3, ..Default::default() },
        )
        .unwrap();
        assert_eq!(a.to_machine(false), b.to_machine(false));
        assert!(a.to_machine(true).contains("elapsed_ms="));
    }

    #[test]
    fn random_hunt_is_reproducible() {
        let cfg = HuntConfig {
            nx: 5,
            ny_max: 7,
            mode: HuntMode::Random { seed: 11, trials: 40 },
        };
        let opts = CampaignOptions { jobs: 2, ..Default::default() };
        let a = hunt_counterexample(cfg, &opts).unwrap();
        let b = hunt_counterexample(cfg, &opts).unwrap();
        assert_eq!(a.to_machine(false), b.to_machine(false));
        assert_eq!(a.graphs_enumerated, 40);
        assert!(a.graphs_examined > 0);
        assert!(a.confirmed());
    }
}
