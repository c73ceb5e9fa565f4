//! Check outcomes and the line-oriented `key=value` record format used for
//! machine-readable output.

use std::fmt;

use crate::bigraph::Bigraph;
use crate::cycle::BaseCycle;
use crate::format::write_bigraph;
use crate::vertex::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Subset(VertexSet),
    /// An absent X,Y-edge (0-based) whose addition is the counterexample.
    AddedEdge { x: usize, y: usize },
    Subgraph(Bigraph),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Subset(s) => write!(f, "{s}"),
            Witness::AddedEdge { x, y } => write!(f, "+x{}y{}", x + 1, y + 1),
            Witness::Subgraph(g) => f.write_str(&write_bigraph(g)),
        }
    }
}

/// Outcome of a decision procedure, with an optional witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    /// A cycle certifying a positive answer, when there is a natural one.
    pub cycle: Option<BaseCycle>,
    /// Which clause failed, for multi-clause checks.
    pub reason: Option<String>,
    /// Set when the answer rests on a necessary-but-not-sufficient test.
    pub approximate: bool,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            passed: true,
            witness: None,
            cycle: None,
            reason: None,
            approximate: false,
            notes: Vec::new(),
        }
    }

    pub fn fail(check: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            passed: false,
            reason: Some(reason.into()),
            ..Self::pass(check)
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn witness_subset(&self) -> Option<VertexSet> {
        match &self.witness {
            Some(Witness::Subset(s)) => Some(*s),
            _ => None,
        }
    }

    pub fn to_record(&self) -> Record {
        let mut r = Record::new("check", &self.check);
        r.push("passed", self.passed);
        r.push_opt("witness", self.witness.as_ref());
        r.push_opt("cycle", self.cycle.as_ref());
        r.push_opt("reason", self.reason.as_ref());
        r.push("approximate", self.approximate);
        for n in &self.notes {
            r.push("note", n);
        }
        r
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.check)?;
        if self.approximate {
            f.write_str(" (approximate)")?;
        }
        if let Some(r) = &self.reason {
            write!(f, ": {r}")?;
        }
        match &self.witness {
            Some(Witness::Subgraph(g)) => write!(f, "\n  witness subgraph:\n{}", indent(&write_bigraph(g)))?,
            Some(w) => write!(f, "\n  witness: {w}")?,
            None => {}
        }
        if let Some(c) = &self.cycle {
            write!(f, "\n  cycle: {c}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}\n")).collect::<String>().trim_end().to_string()
}

/// One `key=value` record terminated by `end`. Values are escaped so each
/// field stays on one line: `\` becomes `\\` and a newline becomes `\n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str, name: impl fmt::Display) -> Self {
        let mut r = Record::default();
        r.push(kind, name);
        r
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    /// Empty value when absent, so every record of a kind has the same keys.
    pub fn push_opt<T: fmt::Display>(&mut self, key: &str, value: Option<T>) -> &mut Self {
        match value {
            Some(v) => self.push(key, v),
            None => self.push(key, ""),
        }
    }

    pub fn extend(&mut self, other: Record) -> &mut Self {
        self.fields.extend(other.fields);
        self
    }

    /// Appends `other`'s fields with a key prefix, e.g. `audit.`.
    pub fn nest(&mut self, prefix: &str, other: Record) -> &mut Self {
        for (k, v) in other.fields {
            self.fields.push((format!("{prefix}{k}"), v));
        }
        self
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.fields
            .iter()
            .filter(move |(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Parses one record from its text form (the inverse of `Display`).
    pub fn parse(text: &str) -> Option<Record> {
        Self::parse_all(text)?.into_iter().next()
    }

    /// Parses a stream of records. Blank lines between records are skipped;
    /// a truncated final record is an error.
    pub fn parse_all(text: &str) -> Option<Vec<Record>> {
        let mut out = Vec::new();
        let mut r = Record::default();
        let mut open = false;
        for line in text.lines() {
            if line == "end" {
                out.push(std::mem::take(&mut r));
                open = false;
                continue;
            }
            if line.is_empty() && !open {
                continue;
            }
            let (k, v) = line.split_once('=')?;
            r.fields.push((k.to_string(), unescape(v)));
            open = true;
        }
        if open {
            None
        } else {
            Some(out)
        }
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.fields {
            writeln!(f, "{k}={}", escape(v))?;
        }
        writeln!(f, "end")
    }
}

pub fn escape(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

pub fn unescape(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    let mut chars = value.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some('n') => out.push('\n'),
                Some(other) => out.push(other),
                None => out.push('\\'),
            }
        } else {
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn escape_round_trips(s in ".*") {
            let e = escape(&s);
            prop_assert!(!e.contains('\n'));
            prop_assert_eq!(unescape(&e), s);
        }
    }

    #[test]
    fn record_round_trip() {
        let mut r = Record::new("check", "demo");
        r.push("witness", "p bigraph 1 1\ne 1 1\n");
        r.push("passed", false);
        let text = r.to_string();
        assert_eq!(
            text,
            "check=demo\nwitness=p bigraph 1 1\\ne 1 1\\n\npassed=false\nend\n"
        );
        assert_eq!(Record::parse(&text).unwrap(), r);
    }

    #[test]
    fn record_streams() {
        let mut a = Record::new("shard", "1:0");
        a.push("diagnostic", "one").push("diagnostic", "two");
        let b = Record::new("violation", "3-cyclic");
        let text = format!("{a}\n{b}");
        let all = Record::parse_all(&text).unwrap();
        assert_eq!(all, vec![a, b]);
        assert_eq!(all[0].get_all("diagnostic").collect::<Vec<_>>(), ["one", "two"]);
        assert!(Record::parse_all("shard=1:0\n").is_none());
        assert_eq!(Record::parse_all("").unwrap(), vec![]);
    }
}
