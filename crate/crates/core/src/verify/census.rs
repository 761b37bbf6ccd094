use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{sibling, write_file, ReportFiles};
use crate::error::{Error, Result};
use crate::exponent::exponent_of_matrix;
use crate::graph::{cycle_profile, Digraph, DEFAULT_CYCLE_CAP};
use crate::iso::canonical_form;
use crate::matrix::BoolMatrix;

pub const CENSUS_ORDER_CAP: usize = 5;

/// One isomorphism class of primitive digraphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    /// Canonical adjacency matrix, row-major `0`/`1` string.
    pub canonical: String,
    pub girth: usize,
    pub cycle_lengths: Vec<usize>,
    pub exponent: u64,
    /// Labelled matrices in this class seen in the scanned index range.
    pub count: u64,
}

/// Census of the primitive matrices with enumeration index in
/// `start..end`; row-major bit `i*n + j` of the index is entry `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub n: usize,
    pub rows: Vec<CensusRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
struct ExponentSummary {
    exponent: u64,
    classes: usize,
    labelled: u64,
}

/// Full index range for order `n`.
pub fn census_size(n: usize) -> u64 {
    1u64 << (n * n)
}

pub fn census(n: usize, start: u64, end: u64) -> Result<CensusTable> {
    if !(2..=CENSUS_ORDER_CAP).contains(&n) {
        return Err(Error::params(format!(
            "census needs 2 <= n <= {CENSUS_ORDER_CAP}, got {n}"
        )));
    }
    if start > end || end > census_size(n) {
        return Err(Error::params(format!(
            "index range {start}..{end} outside 0..{}",
            census_size(n)
        )));
    }
    let classes = (start..end)
        .into_par_iter()
        .fold(
            BTreeMap::new,
            |mut acc: BTreeMap<String, CensusRow>, idx| {
                let d =
                    Digraph::from_matrix(BoolMatrix::from_index(n, idx).expect("order checked"));
                if d.is_primitive() {
                    let key = canonical_form(&d).expect("order checked").bits();
                    acc.entry(key.clone())
                        .or_insert_with(|| describe(&d, key))
                        .count += 1;
                }
                acc
            },
        )
        .reduce(BTreeMap::new, merge_maps);
    Ok(CensusTable::from_map(n, classes))
}

fn describe(d: &Digraph, canonical: String) -> CensusRow {
    let profile = cycle_profile(d, DEFAULT_CYCLE_CAP).expect("small order");
    CensusRow {
        canonical,
        girth: profile.girth().expect("primitive"),
        cycle_lengths: profile.lengths.to_vec(),
        exponent: exponent_of_matrix(d.matrix()).expect("primitive").value,
        count: 0,
    }
}

fn merge_maps(
    mut a: BTreeMap<String, CensusRow>,
    b: BTreeMap<String, CensusRow>,
) -> BTreeMap<String, CensusRow> {
    for (k, row) in b {
        match a.get_mut(&k) {
            Some(existing) => existing.count += row.count,
            None => {
                a.insert(k, row);
            }
        }
    }
    a
}

impl CensusTable {
    fn from_map(n: usize, map: BTreeMap<String, CensusRow>) -> Self {
        let mut rows: Vec<CensusRow> = map.into_values().collect();
        rows.sort_by(|a, b| (a.exponent, &a.canonical).cmp(&(b.exponent, &b.canonical)));
        Self { n, rows }
    }

    /// Combines tables built from disjoint index ranges.
    pub fn merge(self, other: CensusTable) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let as_map = |t: CensusTable| -> BTreeMap<String, CensusRow> {
            t.rows
                .into_iter()
                .map(|r| (r.canonical.clone(), r))
                .collect()
        };
        let n = self.n;
        Ok(Self::from_map(n, merge_maps(as_map(self), as_map(other))))
    }

    pub fn labelled_total(&self) -> u64 {
        self.rows.iter().map(|r| r.count).sum()
    }

    pub fn to_jsonl(&self) -> Result<String> {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&serde_json::to_string(r)?);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut n = None;
        for (i, line) in text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
        {
            let row: CensusRow = serde_json::from_str(line).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            let order = (row.canonical.len() as f64).sqrt() as usize;
            if order * order != row.canonical.len() || n.is_some_and(|m| m != order) {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "canonical string has the wrong length".into(),
                });
            }
            n = Some(order);
            rows.push(row);
        }
        let n = n.ok_or_else(|| Error::Parse {
            line: 0,
            message: "empty census".into(),
        })?;
        let map = rows.into_iter().map(|r| (r.canonical.clone(), r)).collect();
        Ok(Self::from_map(n, map))
    }

    /// Per-exponent class and labelled counts.
    pub fn summary_csv(&self) -> Result<String> {
        let mut by_exp: BTreeMap<u64, ExponentSummary> = BTreeMap::new();
        for r in &self.rows {
            let e = by_exp.entry(r.exponent).or_insert(ExponentSummary {
                exponent: r.exponent,
                classes: 0,
                labelled: 0,
            });
            e.classes += 1;
            e.labelled += r.count;
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for s in by_exp.values() {
            w.serialize(s)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write(&self, path: &Path) -> Result<ReportFiles> {
        let files = ReportFiles {
            rows: path.to_path_buf(),
            summary: sibling(path, "summary.csv"),
            findings: sibling(path, "findings.txt"),
        };
        write_file(&files.rows, &self.to_jsonl()?)?;
        write_file(&files.summary, &self.summary_csv()?)?;
        let max = self.rows.last().map_or(0, |r| r.exponent);
        write_file(
            &files.findings,
            &format!(
                "# census n={}\n{} classes, {} labelled primitive matrices, largest exponent {max}\n",
                self.n,
                self.rows.len(),
                self.labelled_total()
            ),
        )?;
        Ok(files)
    }
}
