use rayon::prelude::*;

use super::{ClaimId, Quantity, Report, Rule, VerificationRow};
use crate::arithmetic::gcd;
use crate::error::{Error, Result};
use crate::exponent::{exponent, lemma34_bound};
use crate::families::FamilySpec;

pub const LEMMA34_ORDER_CAP: usize = 12;

/// Every valid `(n, g, k)`: `gcd(n, g) = 1`, `n ≥ 2g`, `g+1 ≤ k ≤ n-g+1`.
fn triples(n_max: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        for g in (1..=n / 2).filter(|&g| gcd(n as u64, g as u64) == 1) {
            for k in g + 1..=n + 1 - g {
                out.push((n, g, k));
            }
        }
    }
    out
}

/// Upper bound for the two-disjoint-short-cycles digraph `H(n, g, k)` over
/// every valid triple with `n ≤ n_max`.
pub fn verify_lemma34(n_max: usize) -> Result<Report> {
    if !(2..=LEMMA34_ORDER_CAP).contains(&n_max) {
        return Err(Error::params(format!(
            "need 2 <= n_max <= {LEMMA34_ORDER_CAP}, got {n_max}"
        )));
    }
    let list = triples(n_max);
    let rows = list
        .par_iter()
        .enumerate()
        .map(|(i, &(n, g, k))| {
            let spec = FamilySpec::H { n, g, k };
            let exp = exponent(&spec.build()?)?.value;
            let bound = lemma34_bound(n, g)?;
            let tight = if exp == bound { ", tight" } else { "" };
            let shape = if n == 2 * g { "n=2g" } else { "n>2g" };
            Ok(VerificationRow::new(
                ClaimId::L34,
                spec.to_string(),
                n,
                Rule::Le,
                Quantity::Int(bound),
                Quantity::Int(exp),
            )
            .girth(g)
            .asserted(true)
            .seq(i as u64)
            .notes(format!(
                "k={k}, {shape}, slack={}{tight}",
                bound as i64 - exp as i64
            )))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = Report::new(format!("lemma34: n <= {n_max}"));
    let tight: Vec<&str> = rows
        .iter()
        .filter(|r| r.predicted == r.oracle)
        .map(|r| r.instance.as_str())
        .collect();
    report.findings.push(format!(
        "{} triples checked, {} tight",
        rows.len(),
        tight.len()
    ));
    for t in tight {
        report.findings.push(format!("  tight: {t}"));
    }
    report.rows = rows;
    Ok(report.finish())
}
