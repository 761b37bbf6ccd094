//! Claim-by-claim checks of the exponent bounds and chord-family formulas
//! against direct computation.
//!
//! Every check produces [`VerificationRow`]s. Established upper bounds are
//! *asserted*: a disagreeing asserted row means a bug somewhere. The exact
//! formulas and characterizations for the chord families are *reported*
//! only, with their agreement flags, so that the harness can expose
//! disagreements instead of hiding them.
//!
//! A report is written as JSON lines plus a per-claim CSV summary and a
//! plain-text findings file. Rows are sorted before writing, so the output
//! depends only on the parameters, never on scheduling.

mod bounds;
mod census;
mod lemma24;
mod lemma34;
pub mod random;
mod thm33;
mod thm36;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bounds::{bound_rows, verify_bounds, BoundsParams, RANDOM_ORDER_CAP};
pub use census::{census, census_size, CensusRow, CensusTable, CENSUS_ORDER_CAP};
pub use lemma24::verify_lemma24;
pub use lemma34::{verify_lemma34, LEMMA34_ORDER_CAP};
pub use thm33::{verify_thm33, THM33_ORDER_RANGE};
pub use thm36::{verify_thm36, THM36_ORDER_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    #[serde(rename = "L2.2")]
    L22,
    #[serde(rename = "L2.3")]
    L23,
    #[serde(rename = "L2.4")]
    L24,
    #[serde(rename = "L2.5")]
    L25,
    #[serde(rename = "C2.1")]
    C21,
    #[serde(rename = "L2.6")]
    L26,
    #[serde(rename = "L3.2")]
    L32,
    #[serde(rename = "T3.3")]
    T33,
    #[serde(rename = "L3.4")]
    L34,
    #[serde(rename = "T3.6")]
    T36,
    #[serde(rename = "C3.7")]
    C37,
    #[serde(rename = "C3.8")]
    C38,
}

impl ClaimId {
    pub const ALL: [ClaimId; 12] = [
        ClaimId::L22,
        ClaimId::L23,
        ClaimId::L24,
        ClaimId::L25,
        ClaimId::C21,
        ClaimId::L26,
        ClaimId::L32,
        ClaimId::T33,
        ClaimId::L34,
        ClaimId::T36,
        ClaimId::C37,
        ClaimId::C38,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::L22 => "L2.2",
            ClaimId::L23 => "L2.3",
            ClaimId::L24 => "L2.4",
            ClaimId::L25 => "L2.5",
            ClaimId::C21 => "C2.1",
            ClaimId::L26 => "L2.6",
            ClaimId::L32 => "L3.2",
            ClaimId::T33 => "T3.3",
            ClaimId::L34 => "L3.4",
            ClaimId::T36 => "T3.6",
            ClaimId::C37 => "C3.7",
            ClaimId::C38 => "C3.8",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::params(format!("unknown claim id {s:?}")))
    }
}

/// A predicted or computed value: a number, a set of numbers, a flag, or a
/// family label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Bool(bool),
    Int(u64),
    Set(Vec<u64>),
    Label(String),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Bool(b) => write!(f, "{b}"),
            Quantity::Int(v) => write!(f, "{v}"),
            Quantity::Set(s) => write!(f, "{s:?}"),
            Quantity::Label(l) => f.write_str(l),
        }
    }
}

/// How `oracle` is compared against `predicted`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// Upper bound: `oracle ≤ predicted`.
    Le,
    Eq,
}

impl Rule {
    pub fn holds(self, predicted: &Quantity, oracle: &Quantity) -> bool {
        match (self, predicted, oracle) {
            (Rule::Le, Quantity::Int(p), Quantity::Int(o)) => o <= p,
            (Rule::Le, _, _) => false,
            (Rule::Eq, p, o) => p == o,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub claim: ClaimId,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub chords: Option<Vec<usize>>,
    pub predicted: Quantity,
    pub oracle: Quantity,
    pub agree: bool,
    pub notes: String,
    pub rule: Rule,
    pub asserted: bool,
    pub instance: String,
    /// Enumeration index within the generating search, for stable ordering.
    #[serde(skip)]
    pub seq: u64,
}

impl VerificationRow {
    pub fn new(
        claim: ClaimId,
        instance: impl Into<String>,
        n: usize,
        rule: Rule,
        predicted: Quantity,
        oracle: Quantity,
    ) -> Self {
        let agree = rule.holds(&predicted, &oracle);
        Self {
            claim,
            n,
            g: None,
            chords: None,
            predicted,
            oracle,
            agree,
            notes: String::new(),
            rule,
            asserted: false,
            instance: instance.into(),
            seq: 0,
        }
    }

    pub fn girth(mut self, g: usize) -> Self {
        self.g = Some(g);
        self
    }

    pub fn chords(mut self, chords: Vec<usize>) -> Self {
        self.chords = Some(chords);
        self
    }

    pub fn notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    pub fn asserted(mut self, asserted: bool) -> Self {
        self.asserted = asserted;
        self
    }

    pub fn seq(mut self, seq: u64) -> Self {
        self.seq = seq;
        self
    }

    /// Whether the stored flag matches the comparison rule.
    pub fn is_consistent(&self) -> bool {
        self.agree == self.rule.holds(&self.predicted, &self.oracle)
    }

    fn sort_key(&self) -> (ClaimId, usize, usize, u64, &str) {
        (
            self.claim,
            self.n,
            self.g.unwrap_or(0),
            self.seq,
            &self.instance,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimSummary {
    pub claim: ClaimId,
    pub total: usize,
    pub agree: usize,
    pub disagree: usize,
    pub asserted: usize,
    pub asserted_failures: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub name: String,
    pub rows: Vec<VerificationRow>,
    /// Instances skipped because exact cycle data was unavailable.
    pub excluded: Vec<String>,
    /// Free-text observations, one per line.
    pub findings: Vec<String>,
}

/// Paths written by [`Report::write`].
#[derive(Clone, Debug)]
pub struct ReportFiles {
    pub rows: PathBuf,
    pub summary: PathBuf,
    pub findings: PathBuf,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        self
    }

    pub fn asserted_failures(&self) -> impl Iterator<Item = &VerificationRow> {
        self.rows.iter().filter(|r| r.asserted && !r.agree)
    }

    /// True iff every asserted row agrees.
    pub fn passed(&self) -> bool {
        self.asserted_failures().next().is_none()
    }

    pub fn rows_for(&self, claim: ClaimId) -> impl Iterator<Item = &VerificationRow> {
        self.rows.iter().filter(move |r| r.claim == claim)
    }

    pub fn summary(&self) -> Vec<ClaimSummary> {
        ClaimId::ALL
            .into_iter()
            .filter_map(|claim| {
                let rows: Vec<_> = self.rows_for(claim).collect();
                if rows.is_empty() {
                    return None;
                }
                let agree = rows.iter().filter(|r| r.agree).count();
                Some(ClaimSummary {
                    claim,
                    total: rows.len(),
                    agree,
                    disagree: rows.len() - agree,
                    asserted: rows.iter().filter(|r| r.asserted).count(),
                    asserted_failures: rows.iter().filter(|r| r.asserted && !r.agree).count(),
                })
            })
            .collect()
    }

    pub fn to_jsonl(&self) -> Result<String> {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&serde_json::to_string(row)?);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn summary_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for s in self.summary() {
            w.serialize(s)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn findings_text(&self) -> String {
        let mut out = format!("# {}\n", self.name);
        let failures: Vec<_> = self.asserted_failures().collect();
        out.push_str(&format!(
            "rows: {}, asserted: {}, asserted failures: {}\n",
            self.rows.len(),
            self.rows.iter().filter(|r| r.asserted).count(),
            failures.len()
        ));
        for r in failures {
            out.push_str(&format!(
                "FAIL {} {}: predicted {} oracle {} ({})\n",
                r.claim, r.instance, r.predicted, r.oracle, r.notes
            ));
        }
        if !self.excluded.is_empty() {
            out.push_str(&format!("excluded instances: {}\n", self.excluded.len()));
            for e in &self.excluded {
                out.push_str(&format!("  {e}\n"));
            }
        }
        for f in &self.findings {
            out.push_str(f);
            out.push('\n');
        }
        out
    }

    /// Writes `path` (JSON lines) and, next to it, `<stem>.summary.csv` and
    /// `<stem>.findings.txt`. Existing files are replaced.
    pub fn write(&self, path: &Path) -> Result<ReportFiles> {
        let files = ReportFiles {
            rows: path.to_path_buf(),
            summary: sibling(path, "summary.csv"),
            findings: sibling(path, "findings.txt"),
        };
        write_file(&files.rows, &self.to_jsonl()?)?;
        write_file(&files.summary, &self.summary_csv()?)?;
        write_file(&files.findings, &self.findings_text())?;
        Ok(files)
    }
}

pub(crate) fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    path.with_file_name(format!("{stem}.{suffix}"))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(contents.as_bytes())?;
    Ok(())
}

/// Reads JSON-lines report rows back, rejecting rows whose `agree` flag
/// does not follow from `predicted`, `oracle` and `rule`.
pub fn parse_report(text: &str) -> Result<Vec<VerificationRow>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: VerificationRow = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        if !row.is_consistent() {
            return Err(Error::Parse {
                line: i + 1,
                message: format!(
                    "agree flag {} does not match rule {:?}",
                    row.agree, row.rule
                ),
            });
        }
        rows.push(row.seq(i as u64));
    }
    Ok(rows)
}

/// `[1, 2]` → `"1,2"`.
pub(crate) fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
