//! Plain-text graph formats.
//!
//! Bigraphs:
//!
//! ```text
//! c optional comment
//! p bigraph NX NY
//! e I J          (x_I ~ y_J, 1-based)
//! ```
//!
//! Hypergraphs:
//!
//! ```text
//! p hgraph NV NE
//! s v1 v2 ...    (one line per edge, possibly empty)
//! ```
//!
//! A stream holds several records; a record ends at a blank line, at the next
//! `p` line, or at end of input. Out-of-range indices and repeated `e` lines
//! are format errors.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::bigraph::{Bigraph, Hypergraph};
use crate::error::{Error, Result};
use crate::vertex::BitIter;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphRecord {
    Bigraph(Bigraph),
    Hypergraph(Hypergraph),
}

impl GraphRecord {
    /// Hypergraphs are replaced by their incidence graphs.
    pub fn into_bigraph(self) -> Bigraph {
        match self {
            GraphRecord::Bigraph(g) => g,
            GraphRecord::Hypergraph(h) => h.incidence_graph(),
        }
    }
}

enum Open {
    Bi {
        nx: usize,
        ny: usize,
        edges: Vec<(usize, usize)>,
        seen: HashSet<(usize, usize)>,
    },
    Hyper {
        nv: usize,
        ne: usize,
        header_line: usize,
        edges: Vec<Vec<usize>>,
    },
}

fn close(open: Option<Open>, out: &mut Vec<GraphRecord>) -> Result<()> {
    match open {
        None => Ok(()),
        Some(Open::Bi { nx, ny, edges, .. }) => {
            out.push(GraphRecord::Bigraph(Bigraph::new(nx, ny, edges)?));
            Ok(())
        }
        Some(Open::Hyper {
            nv,
            ne,
            header_line,
            edges,
        }) => {
            if edges.len() != ne {
                return Err(Error::format(
                    header_line,
                    format!("header announces {ne} edges, found {}", edges.len()),
                ));
            }
            out.push(GraphRecord::Hypergraph(Hypergraph::new(nv, &edges)?));
            Ok(())
        }
    }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::format(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::format(line, format!("bad {what} `{tok}`")))
}

fn index(tok: Option<&str>, line: usize, what: &str, count: usize) -> Result<usize> {
    let v = number(tok, line, what)?;
    if v == 0 || v > count {
        return Err(Error::format(
            line,
            format!("{what} {v} out of range 1..={count}"),
        ));
    }
    Ok(v - 1)
}

/// Parses every record in `text`.
pub fn parse_records(text: &str) -> Result<Vec<GraphRecord>> {
    let mut out = Vec::new();
    let mut open: Option<Open> = None;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() {
            close(open.take(), &mut out)?;
            continue;
        }
        if line.starts_with('c') {
            continue;
        }
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("p") => {
                close(open.take(), &mut out)?;
                let kind = toks.next();
                let a = number(toks.next(), line_no, "count")?;
                let b = number(toks.next(), line_no, "count")?;
                if toks.next().is_some() {
                    return Err(Error::format(line_no, "trailing tokens after header"));
                }
                open = Some(match kind {
                    Some("bigraph") => {
                        Bigraph::empty(a, b).map_err(|e| Error::format(line_no, e.to_string()))?;
                        Open::Bi {
                            nx: a,
                            ny: b,
                            edges: Vec::new(),
                            seen: HashSet::new(),
                        }
                    }
                    Some("hgraph") => {
                        if a > 64 || b > 64 {
                            return Err(Error::format(line_no, "hypergraph exceeds 64 vertices or edges"));
                        }
                        Open::Hyper {
                            nv: a,
                            ne: b,
                            header_line: line_no,
                            edges: Vec::new(),
                        }
                    }
                    other => {
                        return Err(Error::format(
                            line_no,
                            format!("unknown graph kind `{}`", other.unwrap_or("")),
                        ))
                    }
                });
            }
            Some("e") => match open.as_mut() {
                Some(Open::Bi { nx, ny, edges, seen }) => {
                    let i = index(toks.next(), line_no, "x index", *nx)?;
                    let j = index(toks.next(), line_no, "y index", *ny)?;
                    if toks.next().is_some() {
                        return Err(Error::format(line_no, "trailing tokens after edge"));
                    }
                    if !seen.insert((i, j)) {
                        return Err(Error::format(
                            line_no,
                            format!("duplicate edge {} {}", i + 1, j + 1),
                        ));
                    }
                    edges.push((i, j));
                }
                _ => return Err(Error::format(line_no, "`e` line outside a bigraph record")),
            },
            Some("s") => match open.as_mut() {
                Some(Open::Hyper { nv, ne, edges, .. }) => {
                    if edges.len() == *ne {
                        return Err(Error::format(line_no, format!("more than {ne} edges")));
                    }
                    let mut edge = Vec::new();
                    for tok in toks {
                        let v = index(Some(tok), line_no, "vertex", *nv)?;
                        if edge.contains(&v) {
                            return Err(Error::format(
                                line_no,
                                format!("vertex {} repeated within an edge", v + 1),
                            ));
                        }
                        edge.push(v);
                    }
                    edges.push(edge);
                }
                _ => return Err(Error::format(line_no, "`s` line outside a hypergraph record")),
            },
            Some(other) => {
                return Err(Error::format(line_no, format!("unknown line type `{other}`")))
            }
            None => unreachable!("blank lines handled above"),
        }
    }
    close(open, &mut out)?;
    Ok(out)
}

fn single(text: &str) -> Result<GraphRecord> {
    let mut recs = parse_records(text)?;
    match recs.len() {
        1 => Ok(recs.pop().unwrap()),
        0 => Err(Error::format(0, "no graph record found")),
        n => Err(Error::format(0, format!("expected one graph record, found {n}"))),
    }
}

/// Parses exactly one `p bigraph` record.
pub fn parse_bigraph(text: &str) -> Result<Bigraph> {
    match single(text)? {
        GraphRecord::Bigraph(g) => Ok(g),
        GraphRecord::Hypergraph(_) => Err(Error::format(0, "expected a bigraph record")),
    }
}

/// Parses exactly one `p hgraph` record.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    match single(text)? {
        GraphRecord::Hypergraph(h) => Ok(h),
        GraphRecord::Bigraph(_) => Err(Error::format(0, "expected a hypergraph record")),
    }
}

pub fn write_bigraph(g: &Bigraph) -> String {
    let mut s = format!("p bigraph {} {}\n", g.nx(), g.ny());
    for (x, y) in g.edges() {
        let _ = writeln!(s, "e {} {}", x + 1, y + 1);
    }
    s
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut s = format!("p hgraph {} {}\n", h.vertex_count(), h.edge_count());
    for &e in h.edge_masks() {
        s.push('s');
        for v in BitIter(e) {
            let _ = write!(s, " {}", v + 1);
        }
        s.push('\n');
    }
    s
}

/// Records separated by blank lines.
pub fn write_stream<'a>(graphs: impl IntoIterator<Item = &'a Bigraph>) -> String {
    graphs
        .into_iter()
        .map(write_bigraph)
        .collect::<Vec<_>>()
        .join("\n")
}

/// Graphviz rendering; x-vertices are boxes, y-vertices circles.
pub fn to_dot(g: &Bigraph) -> String {
    let mut s = String::from("graph bigraph {\n");
    for x in 0..g.nx() {
        let _ = writeln!(s, "  x{} [shape=box];", x + 1);
    }
    for y in 0..g.ny() {
        let _ = writeln!(s, "  y{} [shape=circle];", y + 1);
    }
    for (x, y) in g.edges() {
        let _ = writeln!(s, "  x{} -- y{};", x + 1, y + 1);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_bigraph("c a 4-cycle\np bigraph 2 2\ne 1 1\ne 1 2\nc mid\ne 2 1\ne 2 2\n").unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(write_bigraph(&g), "p bigraph 2 2\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n");
    }

    #[test]
    fn rejects_out_of_range_and_duplicates() {
        let e = parse_bigraph("p bigraph 2 2\ne 3 1\n").unwrap_err();
        assert!(matches!(e, Error::Format { line: 2, .. }), "{e}");
        let e = parse_bigraph("p bigraph 2 2\ne 1 0\n").unwrap_err();
        assert!(matches!(e, Error::Format { line: 2, .. }));
        let e = parse_bigraph("p bigraph 2 2\ne 1 1\ne 1 1\n").unwrap_err();
        assert!(e.to_string().contains("duplicate"), "{e}");
        assert!(parse_bigraph("e 1 1\n").is_err());
        assert!(parse_bigraph("p bigraph 65 1\n").is_err());
        assert!(parse_bigraph("p bigraph 2 2\ne 1 1 1\n").is_err());
        assert!(parse_bigraph("p digraph 2 2\n").is_err());
        assert!(parse_bigraph("").is_err());
    }

    #[test]
    fn parses_streams() {
        let text = "p bigraph 1 1\ne 1 1\n\np bigraph 2 1\np hgraph 2 1\ns 1 2\n";
        let recs = parse_records(text).unwrap();
        assert_eq!(recs.len(), 3);
        assert!(matches!(recs[2], GraphRecord::Hypergraph(_)));
        let g = recs[2].clone().into_bigraph();
        assert_eq!((g.nx(), g.ny(), g.edge_count()), (2, 1, 2));
    }

    #[test]
    fn hypergraph_format() {
        let h = parse_hypergraph("p hgraph 3 3\ns 1 2\ns\ns 3 1\n").unwrap();
        assert_eq!(h.edge(1), Vec::<usize>::new());
        assert_eq!(h.edge(2), vec![0, 2]);
        assert_eq!(write_hypergraph(&h), "p hgraph 3 3\ns 1 2\ns\ns 1 3\n");
        assert!(parse_hypergraph("p hgraph 3 2\ns 1 2\n").is_err());
        assert!(parse_hypergraph("p hgraph 3 1\ns 1 2\ns 2 3\n").is_err());
        assert!(parse_hypergraph("p hgraph 3 1\ns 1 1\n").is_err());
        assert!(parse_hypergraph("p hgraph 3 1\ns 4\n").is_err());
    }

    #[test]
    fn stream_writer_separates_records() {
        let a = Bigraph::new(1, 1, [(0, 0)]).unwrap();
        let b = Bigraph::empty(2, 0).unwrap();
        let text = write_stream([&a, &b]);
        assert_eq!(text, "p bigraph 1 1\ne 1 1\n\np bigraph 2 0\n");
        let back: Vec<Bigraph> = parse_records(&text)
            .unwrap()
            .into_iter()
            .map(GraphRecord::into_bigraph)
            .collect();
        assert_eq!(back, vec![a, b]);
    }
}
