use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{ClaimId, Quantity, Report, Rule, VerificationRow};
use crate::error::{Error, Result};
use crate::exponent::{exponent_of_matrix, wielandt};
use crate::families::{d1, d2};
use crate::graph::Digraph;
use crate::iso::{are_isomorphic, automorphism_count};
use crate::matrix::BoolMatrix;

#[derive(Default)]
struct Tally {
    histogram: BTreeMap<u64, u64>,
    /// Matrix indices with exponent `W` and `W - 1`.
    top: Vec<(u64, u64)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (e, c) in other.histogram {
            *self.histogram.entry(e).or_default() += c;
        }
        self.top.extend(other.top);
        self
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Exhaustive check over all `2^(n²)` matrices of order 4 or 5 that the
/// top two exponents are attained exactly by the relabellings of `D1` and
/// `D2`.
pub fn verify_lemma24(n: usize) -> Result<Report> {
    if !(4..=5).contains(&n) {
        return Err(Error::params(format!(
            "exhaustive check supports n = 4 or 5, got {n}"
        )));
    }
    let w = wielandt(n);
    let total = 1u64 << (n * n);
    let tally = (0..total)
        .into_par_iter()
        .fold(Tally::default, |mut t, idx| {
            let d = Digraph::from_matrix(BoolMatrix::from_index(n, idx).expect("order checked"));
            if d.is_primitive() {
                let e = exponent_of_matrix(d.matrix()).expect("primitive").value;
                *t.histogram.entry(e).or_default() += 1;
                if e + 1 >= w {
                    t.top.push((e, idx));
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    let mut top = tally.top;
    top.sort_unstable();

    let mut report = Report::new(format!("lemma24: exhaustive n={n}"));
    let max_exp = tally.histogram.keys().next_back().copied().unwrap_or(0);
    report.rows.push(
        VerificationRow::new(
            ClaimId::L24,
            format!("exhaustive:n={n}:max"),
            n,
            Rule::Le,
            Quantity::Int(w),
            Quantity::Int(max_exp),
        )
        .asserted(true)
        .notes(format!("largest exponent over {total} matrices")),
    );

    for (label, target, extremal) in [("D1", w, d1(n)?), ("D2", w - 1, d2(n)?)] {
        let members: Vec<Digraph> = top
            .iter()
            .filter(|&&(e, _)| e == target)
            .map(|&(_, idx)| {
                Digraph::from_matrix(BoolMatrix::from_index(n, idx).expect("order checked"))
            })
            .collect();
        let isomorphic = members
            .par_iter()
            .map(|m| are_isomorphic(m, &extremal).map(|w| w.is_some()))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .filter(|&b| b)
            .count();
        let aut = automorphism_count(&extremal)?;
        let orbit = factorial(n) / aut as u64;
        let class = members.len() as u64;
        report.rows.push(
            VerificationRow::new(
                ClaimId::L24,
                format!("exhaustive:n={n}:exp={target}:iso"),
                n,
                Rule::Eq,
                Quantity::Int(class),
                Quantity::Int(isomorphic as u64),
            )
            .asserted(true)
            .notes(format!(
                "members of the exp={target} class isomorphic to {label}"
            )),
        );
        report.rows.push(
            VerificationRow::new(
                ClaimId::L24,
                format!("exhaustive:n={n}:exp={target}:orbit"),
                n,
                Rule::Eq,
                Quantity::Int(orbit),
                Quantity::Int(class),
            )
            .asserted(true)
            .notes(format!(
                "{n}!/|Aut({label})| = {}/{aut} against the class size",
                factorial(n)
            )),
        );
    }

    let primitive: u64 = tally.histogram.values().sum();
    report
        .findings
        .push(format!("{primitive} primitive matrices among {total}"));
    let hist: Vec<String> = tally
        .histogram
        .iter()
        .map(|(e, c)| format!("{e}:{c}"))
        .collect();
    report
        .findings
        .push(format!("exponent histogram: {}", hist.join(" ")));
    Ok(report.finish())
}
