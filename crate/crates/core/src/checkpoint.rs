//! Plain-text progress files for exhaustive campaigns.
//!
//! A checkpoint is a header record naming the campaign and its parameters,
//! then one `shard` record per finished shard, each followed by that shard's
//! violation records. Loading a file whose header does not match is an
//! error rather than a silent restart.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::generators::Shard;
use crate::report::Record;
use crate::verifier::{Outcome, Violation};

pub const CHECKPOINT_DIR_ENV: &str = "SUPERCYCLIC_CHECKPOINT_DIR";

/// `explicit`, else `$SUPERCYCLIC_CHECKPOINT_DIR`, else
/// `./supercyclic-checkpoints`.
pub fn checkpoint_dir(explicit: Option<&Path>) -> PathBuf {
    match explicit {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(CHECKPOINT_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("supercyclic-checkpoints")),
    }
}

fn file_name(campaign: &str, params: &[(String, String)]) -> String {
    let mut name = campaign.to_string();
    for (k, v) in params {
        name.push_str(&format!("_{k}-{v}"));
    }
    name.push_str(".ckpt");
    name
}

fn shard_key(s: Shard) -> String {
    format!("{}:{}", s.ny, s.first)
}

fn parse_shard(text: &str) -> Option<Shard> {
    let (ny, first) = text.split_once(':')?;
    Some(Shard {
        ny: ny.parse().ok()?,
        first: first.parse().ok()?,
    })
}

pub(crate) struct Checkpoint {
    path: PathBuf,
    header: Record,
    done: BTreeMap<Shard, Outcome>,
}

impl Checkpoint {
    pub fn open(dir: Option<&Path>, campaign: &str, params: &[(String, String)]) -> Result<Self> {
        let dir = checkpoint_dir(dir);
        fs::create_dir_all(&dir)?;
        let path = dir.join(file_name(campaign, params));
        let mut header = Record::new("checkpoint", campaign);
        for (k, v) in params {
            header.push(format!("param.{k}"), v);
        }
        let mut ck = Checkpoint {
            path,
            header,
            done: BTreeMap::new(),
        };
        if ck.path.exists() {
            ck.load()?;
        }
        Ok(ck)
    }

    fn load(&mut self) -> Result<()> {
        let bad = |msg: &str| Error::invalid(format!("checkpoint {}: {msg}", self.path.display()));
        let text = fs::read_to_string(&self.path)?;
        let records = Record::parse_all(&text).ok_or_else(|| bad("truncated record"))?;
        let mut it = records.into_iter();
        match it.next() {
            Some(h) if h == self.header => {}
            _ => return Err(bad("header does not match this campaign")),
        }
        let mut current: Option<Shard> = None;
        for r in it {
            let kind = r.fields().first().map(|(k, v)| (k.as_str(), v.as_str()));
            if let Some(("shard", key)) = kind {
                let s = parse_shard(key).ok_or_else(|| bad("malformed shard"))?;
                let num = |k: &str| r.get(k).and_then(|v| v.parse::<u64>().ok()).ok_or_else(|| bad("malformed counts"));
                let outcome = Outcome {
                    enumerated: num("enumerated")?,
                    examined: num("examined")?,
                    violations: Vec::new(),
                    diagnostics: r.get_all("diagnostic").map(str::to_string).collect(),
                };
                self.done.insert(s, outcome);
                current = Some(s);
            } else if let Some(("violation", _)) = kind {
                let s = current.ok_or_else(|| bad("violation before any shard"))?;
                let v = Violation::from_record(&r)?;
                self.done.get_mut(&s).expect("shard inserted").violations.push(v);
            } else {
                return Err(bad("unknown record"));
            }
        }
        Ok(())
    }

    pub fn has(&self, s: Shard) -> bool {
        self.done.contains_key(&s)
    }

    pub fn get(&self, s: Shard) -> Option<&Outcome> {
        self.done.get(&s)
    }

    pub fn insert(&mut self, s: Shard, o: Outcome) {
        self.done.insert(s, o);
    }

    /// Writes to a temporary file, then renames it over the checkpoint.
    pub fn save(&self) -> Result<()> {
        let mut text = self.header.to_string();
        for (s, o) in &self.done {
            let mut r = Record::new("shard", shard_key(*s));
            r.push("enumerated", o.enumerated).push("examined", o.examined);
            for d in &o.diagnostics {
                r.push("diagnostic", d);
            }
            text.push_str(&r.to_string());
            for v in &o.violations {
                text.push_str(&v.to_record().to_string());
            }
        }
        let tmp = self.path.with_extension("ckpt.tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}
