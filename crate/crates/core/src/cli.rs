//! Command-line front end. Exit codes: 0 when the claim is confirmed or the
//! object is found, 1 when it is refuted or absent, 2 on usage or input
//! errors.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bigraph::Bigraph;
use crate::classify::{classify, find_critical_core, YMinimalMode};
use crate::condition::{check_condition, degree_hypothesis, Mode};
use crate::cycle::{find_based_cycle, BaseCycle};
use crate::error::{Error, Result};
use crate::format::{parse_records, to_dot, write_bigraph, write_hypergraph, GraphRecord};
use crate::generators::{construct_g3, enumerate_bigraphs, random_bigraph, EnumFilter};
use crate::report::Record;
use crate::structure::{crossing_bound, crossings, max_fan, successor_maps};
use crate::verifier::{
    audit_critical_properties, hunt_counterexample, verify_degree_theorem, verify_k_cyclic, CampaignOptions, HuntConfig,
    HuntMode, VerificationReport,
};
use crate::vertex::{Side, VertexSet};

#[derive(Parser, Debug)]
#[command(name = "supercyclic", version, about = "Super-cyclic bigraphs and super-pancyclic hypergraphs")]
struct Cli {
    /// Emit line-oriented key=value records instead of text.
    #[arg(long, global = true)]
    machine: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Graph file; standard input when omitted.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the necessary condition and the degree hypotheses.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "full")]
        mode: ModeArg,
        /// Also print each graph as the hypergraph whose incidence graph it is.
        #[arg(long)]
        as_hypergraph: bool,
    },
    /// Search for a cycle based on a set of x-vertices.
    Cycle {
        #[command(flatten)]
        input: InputArgs,
        /// 1-based x indices, e.g. "1,3,4".
        #[arg(long)]
        base: String,
    },
    /// Report criticality, saturation and Y-minimality.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "exhaustive")]
        y_minimal: YModeArg,
        /// Also run the audit of critical-graph properties.
        #[arg(long)]
        audit: bool,
    },
    /// Fans, successor maps and crossings relative to a cycle.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// The cycle as "x1,y1,x2,...".
        #[arg(long)]
        cycle: String,
        /// Two 1-based x indices on the cycle, e.g. "1,2".
        #[arg(long)]
        pair: Option<String>,
        /// Fan root (1-based x index off the cycle); every off-cycle x when omitted.
        #[arg(long)]
        root: Option<usize>,
    },
    /// Generate graphs.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Run an exhaustive verification campaign.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Search for a graph satisfying the condition that is not super-cyclic.
    Hunt {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny_max: usize,
        /// Random search instead of exhaustive enumeration.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[command(flatten)]
        campaign: CampaignArgs,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// The three-part extremal graph.
    G3 {
        /// Part sizes "n1,n2,n3".
        #[arg(long)]
        n: String,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        dot: bool,
    },
    /// One graph per isomorphism class.
    Enum {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny_max: usize,
        /// `cond1` keeps graphs satisfying the condition.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = 0)]
        min_x_degree: usize,
        #[arg(long, default_value_t = 0)]
        min_y_degree: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Random graphs with each edge present with probability 1/2.
    Random {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long, default_value_t = 0)]
        min_x_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Graphs satisfying the condition are k-cyclic.
    Kcyclic {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny_max: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        campaign: CampaignArgs,
    },
    /// High minimum degree plus the condition gives super-cyclic.
    Degree {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny_max: usize,
        #[command(flatten)]
        campaign: CampaignArgs,
    },
}

#[derive(Args, Debug)]
struct CampaignArgs {
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Save progress every N generated graphs (0 disables).
    #[arg(long, default_value_t = 0)]
    checkpoint_every: u64,
    /// Include elapsed time in the report.
    #[arg(long)]
    timing: bool,
}

impl CampaignArgs {
    fn options(&self) -> CampaignOptions {
        CampaignOptions {
            jobs: self.jobs,
            checkpoint_every: self.checkpoint_every,
            checkpoint_dir: None,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Full,
    Kim,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum YModeArg {
    One,
    Exhaustive,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run(args: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut out = String::new();
    let result = dispatch(&cli, stdin, &mut out);
    let _ = stdout.write_all(out.as_bytes());
    match result {
        Ok(found) => i32::from(!found),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn read_graphs(input: &InputArgs, stdin: &mut dyn Read) -> Result<Vec<GraphRecord>> {
    let text = match &input.input {
        Some(p) => std::fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    let records = parse_records(&text)?;
    if records.is_empty() {
        return Err(Error::format(0, "no graph in input"));
    }
    Ok(records)
}

fn read_single(input: &InputArgs, stdin: &mut dyn Read) -> Result<Bigraph> {
    let mut records = read_graphs(input, stdin)?;
    if records.len() != 1 {
        return Err(Error::invalid(format!("expected one graph, got {}", records.len())));
    }
    Ok(records.remove(0).into_bigraph())
}

fn parse_x_list(text: &str) -> Result<Vec<usize>> {
    Ok(VertexSet::parse_indices(Side::X, text)?.iter().collect())
}

/// Returns whether the command's claim was confirmed or its object found.
fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut String) -> Result<bool> {
    let machine = cli.machine;
    match &cli.command {
        Command::Check { input, mode, as_hypergraph } => {
            let mode = match mode {
                ModeArg::Full => Mode::Full,
                ModeArg::Kim => Mode::Kim,
            };
            let mut all = true;
            for (i, rec) in read_graphs(input, stdin)?.into_iter().enumerate() {
                let g = rec.into_bigraph();
                let cond = check_condition(&g, mode);
                let flags = degree_hypothesis(&g);
                all &= cond.passed;
                if machine {
                    let mut r = cond.to_record();
                    r.push("graph", i + 1);
                    if let Some(a) = cond.failing_size_witness {
                        r.push("size_witness_hat", g.super_neighborhood_bits(a.bits()).count_ones());
                    }
                    r.nest("degree.", flags.to_record());
                    if *as_hypergraph {
                        r.push("hypergraph", write_hypergraph(&g.hypergraph()));
                    }
                    out.push_str(&r.to_string());
                } else {
                    out.push_str(&format!("graph {}: {cond}\n", i + 1));
                    if let Some(a) = cond.failing_size_witness {
                        let hat = g.super_neighborhood(&a)?;
                        out.push_str(&format!("  N^(A) = {hat}, |N^(A)| = {} < |A| = {}\n", hat.len(), a.len()));
                    }
                    out.push_str(&format!("{flags}\n"));
                    if *as_hypergraph {
                        out.push_str(&write_hypergraph(&g.hypergraph()));
                    }
                }
            }
            Ok(all)
        }
        Command::Cycle { input, base } => {
            let g = read_single(input, stdin)?;
            let a = VertexSet::parse_indices(Side::X, base)?;
            let c = find_based_cycle(&g, &a)?;
            if machine {
                let mut r = Record::new("cycle", a);
                r.push("found", c.is_some()).push_opt("cycle", c.as_ref());
                out.push_str(&r.to_string());
            } else {
                match &c {
                    Some(c) => out.push_str(&format!("{c}\n")),
                    None => out.push_str("ABSENT\n"),
                }
            }
            Ok(c.is_some())
        }
        Command::Classify { input, y_minimal, audit } => {
            let g = read_single(input, stdin)?;
            let mode = match y_minimal {
                YModeArg::One => YMinimalMode::OneDeletion,
                YModeArg::Exhaustive => YMinimalMode::Exhaustive,
            };
            let c = classify(&g, mode)?;
            let reports: Vec<_> = std::iter::once(&c.critical)
                .chain(c.saturated.as_ref())
                .chain(c.y_minimal.as_ref())
                .collect();
            for r in &reports {
                if machine {
                    out.push_str(&r.to_record().to_string());
                } else {
                    out.push_str(&format!("{r}\n"));
                }
            }
            if !c.critical.passed {
                if let Ok(Some(core)) = find_critical_core(&g) {
                    if machine {
                        let mut r = Record::new("core", "critical");
                        r.push("graph", write_bigraph(&core.graph));
                        out.push_str(&r.to_string());
                    } else {
                        out.push_str("critical core:\n");
                        out.push_str(&write_bigraph(&core.graph));
                    }
                }
            }
            if *audit {
                let a = audit_critical_properties(&g);
                out.push_str(&if machine { a.to_machine(false) } else { a.to_text(false) });
            }
            Ok(c.critical.passed)
        }
        Command::Analyze { input, cycle, pair, root } => {
            let g = read_single(input, stdin)?;
            let c = BaseCycle::parse(&g, cycle)?;
            analyze(&g, &c, pair.as_deref(), *root, machine, out)
        }
        Command::Gen { what } => {
            gen(what, out)?;
            Ok(true)
        }
        Command::Verify { what } => {
            let (report, timing) = match what {
                VerifyCommand::Kcyclic { nx, ny_max, k, campaign } => {
                    (verify_k_cyclic(*nx, *ny_max, *k, &campaign.options())?, campaign.timing)
                }
                VerifyCommand::Degree { nx, ny_max, campaign } => {
                    (verify_degree_theorem(*nx, *ny_max, &campaign.options())?, campaign.timing)
                }
            };
            Ok(emit_report(&report, machine, timing, out))
        }
        Command::Hunt { nx, ny_max, random, seed, trials, campaign } => {
            let mode = if *random {
                HuntMode::Random { seed: *seed, trials: *trials }
            } else {
                HuntMode::Exhaustive
            };
            let config = HuntConfig { nx: *nx, ny_max: *ny_max, mode };
            let report = hunt_counterexample(config, &campaign.options())?;
            Ok(emit_report(&report, machine, campaign.timing, out))
        }
    }
}

fn emit_report(report: &VerificationReport, machine: bool, timing: bool, out: &mut String) -> bool {
    out.push_str(&if machine {
        report.to_machine(timing)
    } else {
        report.to_text(timing)
    });
    report.confirmed()
}

fn analyze(
    g: &Bigraph,
    c: &BaseCycle,
    pair: Option<&str>,
    root: Option<usize>,
    machine: bool,
    out: &mut String,
) -> Result<bool> {
    let maps = successor_maps(c);
    let roots: Vec<usize> = match root {
        Some(r) if r == 0 || r > g.nx() => {
            return Err(Error::invalid(format!("root x{r} out of range")));
        }
        Some(r) => vec![r - 1],
        None => (0..g.nx()).filter(|x| c.x_bits() >> x & 1 == 0).collect(),
    };
    if machine {
        let mut r = Record::new("analyze", c);
        for (u, s) in maps.iter() {
            r.push(
                format!("succ.{u}"),
                format!("x+={} x-={} y+={} y-={}", s.x_plus, s.x_minus, s.y_plus, s.y_minus),
            );
        }
        out.push_str(&r.to_string());
    } else {
        out.push_str(&format!("cycle: {c}\nsuccessors:\n"));
        for (u, s) in maps.iter() {
            out.push_str(&format!(
                "  {u}: x+={} x-={} y+={} y-={}\n",
                s.x_plus, s.x_minus, s.y_plus, s.y_minus
            ));
        }
    }
    for x in roots {
        let fan = max_fan(g, x, c)?;
        if machine {
            let mut r = Record::new("fan", format!("x{}", x + 1));
            let contacts: Vec<String> = fan.contacts.iter().map(ToString::to_string).collect();
            r.push("size", fan.size())
                .push("vertex_count", fan.vertex_count())
                .push("half_length", c.half_len())
                .push("contacts", contacts.join(","));
            out.push_str(&r.to_string());
        } else {
            out.push_str(&format!("{fan}\n"));
        }
    }
    let Some(pair) = pair else {
        return Ok(true);
    };
    let xs = parse_x_list(pair)?;
    let [u, v] = xs[..] else {
        return Err(Error::invalid("--pair needs exactly two x indices"));
    };
    let cr = crossings(g, c, u, v)?;
    let bound = crossing_bound(g, c, u, v)?;
    let at: Vec<String> = cr.crossed_at.iter().map(|x| format!("x{}", x + 1)).collect();
    if machine {
        let mut r = Record::new("crossings", format!("x{},x{}", u + 1, v + 1));
        r.push("crossed_at", at.join(","))
            .push("count", cr.count())
            .push("degree_sum", bound.degree_sum)
            .push("cycle_len", bound.cycle_len)
            .push("bound_holds", bound.holds());
        out.push_str(&r.to_string());
    } else {
        out.push_str(&format!(
            "crossings of x{} and x{}: {} (a = {})\n{bound}\n",
            u + 1,
            v + 1,
            if at.is_empty() { "none".to_string() } else { at.join(",") },
            cr.count()
        ));
    }
    Ok(bound.holds())
}

fn gen(what: &GenCommand, out: &mut String) -> Result<()> {
    let emit = |g: &Bigraph, dot: bool, out: &mut String| {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&if dot { to_dot(g) } else { write_bigraph(g) });
    };
    match what {
        GenCommand::G3 { n, delta, dot } => {
            let parts: Vec<usize> = n
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::invalid(format!("bad part sizes `{n}`")))?;
            let [n1, n2, n3] = parts[..] else {
                return Err(Error::invalid("--n needs three part sizes"));
            };
            emit(&construct_g3(n1, n2, n3, *delta)?, *dot, out);
        }
        GenCommand::Enum { nx, ny_max, filter, min_x_degree, min_y_degree, dot } => {
            let condition = match filter.as_deref() {
                None => false,
                Some("cond1") => true,
                Some(other) => return Err(Error::invalid(format!("unknown filter `{other}`"))),
            };
            let f = EnumFilter {
                min_x_degree: *min_x_degree,
                min_y_degree: *min_y_degree,
                condition,
            };
            for g in enumerate_bigraphs(*nx, *ny_max, f)? {
                emit(&g, *dot, out);
            }
        }
        GenCommand::Random { nx, ny, min_x_degree, seed, count, dot } => {
            for i in 0..*count {
                emit(&random_bigraph(*nx, *ny, *min_x_degree, seed.wrapping_add(i))?, *dot, out);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let args: Vec<String> = std::iter::once("supercyclic").chain(args.iter().copied()).map(String::from).collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&args, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    const K33: &str = "p bigraph 3 3\ne 1 1\ne 1 2\ne 1 3\ne 2 1\ne 2 2\ne 2 3\ne 3 1\ne 3 2\ne 3 3\n";

    #[test]
    fn check_k33_passes() {
        let (code, out, _) = call(&["check"], K33);
        assert_eq!(code, 0);
        assert!(out.contains("PASS condition"), "{out}");
    }

    #[test]
    fn cycle_absent_on_g3() {
        let (_, g3, _) = call(&["gen", "g3", "--n", "1,1,1", "--delta", "3"], "");
        let (code, out, _) = call(&["cycle", "--base", "1,2,3"], &g3);
        assert_eq!(code, 1);
        assert_eq!(out, "ABSENT\n");
    }

    #[test]
    fn usage_and_format_errors_exit_two() {
        assert_eq!(call(&["check", "--mode", "weird"], K33).0, 2);
        assert_eq!(call(&["check"], "p bigraph 1 1\ne 2 1\n").0, 2);
        assert_eq!(call(&["frobnicate"], "").0, 2);
        assert_eq!(call(&["cycle", "--base", "1,2"], K33).0, 2);
        assert_eq!(call(&["--help"], "").0, 0);
    }

    #[test]
    fn analyze_k33() {
        let (code, out, _) = call(
            &["--machine", "analyze", "--cycle", "x1,y1,x2,y2,x3,y3", "--pair", "1,2"],
            K33,
        );
        assert_eq!(code, 0);
        assert!(out.contains("crossed_at=x3\n"), "{out}");
        assert!(out.contains("bound_holds=true\n"));
    }
}
