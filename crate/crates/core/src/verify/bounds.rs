use rayon::prelude::*;

use super::random::{random_cycle_pair, random_primitive, RandomInstance};
use super::{join, ClaimId, Quantity, Report, Rule, VerificationRow};
use crate::arithmetic::frobenius_of;
use crate::error::{Error, Result};
use crate::exponent::{
    c_walk_distances_with, exponent, lemma23_bound, lemma25_bound, lemma26_bound, lemma32_bound,
};
use crate::families::chord_family;
use crate::graph::{cycle_profile, Digraph, DEFAULT_CYCLE_CAP};

/// Largest order accepted for random sampling.
pub const RANDOM_ORDER_CAP: usize = 10;

#[derive(Clone, Debug)]
pub struct BoundsParams {
    pub n_max: usize,
    pub samples: u64,
    pub seed: u64,
    /// Extra instances from the cycle-pair generator, which unlike the
    /// Hamiltonian one reaches two-length digraphs with `q < n`.
    pub pair_samples: u64,
    /// Chord families `(n, g)` to sweep in full alongside the random sample.
    pub chord_families: Vec<(usize, usize)>,
}

enum Outcome {
    Rows(Vec<VerificationRow>),
    Excluded(String),
    Skipped,
}

/// Every applicable upper-bound row for one primitive digraph. Fails with
/// `CycleCapHit` or `TooManyCycleLengths` when the cycle data needed by the
/// walk bound is unavailable.
pub fn bound_rows(instance: &str, seq: u64, d: &Digraph) -> Result<Vec<VerificationRow>> {
    let n = d.order();
    let profile = cycle_profile(d, DEFAULT_CYCLE_CAP)?;
    profile.exact()?;
    let exp = exponent(d)?.value;
    let lengths = profile.lengths;
    let g = lengths.shortest().ok_or(Error::NonPrimitive)?;
    let gens: Vec<u64> = lengths.iter().map(|l| l as u64).collect();
    let c_text = format!("C={{{}}}", join(&gens));

    let row = |claim, bound: u64| {
        VerificationRow::new(
            claim,
            instance,
            n,
            Rule::Le,
            Quantity::Int(bound),
            Quantity::Int(exp),
        )
        .girth(g)
        .asserted(true)
        .seq(seq)
    };
    let mut rows = Vec::new();

    let cw = c_walk_distances_with(d, &profile)?;
    let phi = frobenius_of(&gens)?;
    rows.push(row(ClaimId::L22, cw.max as u64 + phi).notes(format!(
        "d(C)={} at ({},{}), phi={phi}, {c_text}",
        cw.max, cw.arg_max.0, cw.arg_max.1
    )));

    rows.push(row(ClaimId::L23, lemma23_bound(n, g)?).notes(c_text.clone()));

    let l25 = lemma25_bound(n)?;
    if lengths.len() >= 3 {
        rows.push(row(ClaimId::L25, l25).notes(c_text.clone()));
    }
    if exp > l25 {
        rows.push(
            VerificationRow::new(
                ClaimId::C21,
                instance,
                n,
                Rule::Eq,
                Quantity::Int(2),
                Quantity::Int(lengths.len() as u64),
            )
            .girth(g)
            .asserted(true)
            .seq(seq)
            .notes(format!("exp={exp} > {l25}, {c_text}")),
        );
    }
    if lengths.len() == 2 {
        let q = lengths.longest().expect("two lengths");
        rows.push(row(ClaimId::L26, lemma26_bound(n, g, q)?).notes(c_text.clone()));
        if n >= 6 && q < n {
            rows.push(row(ClaimId::L32, lemma32_bound(n, g)?).notes(c_text));
        }
    }
    Ok(rows)
}

fn classify(result: Result<Vec<VerificationRow>>, instance: String) -> Result<Outcome> {
    match result {
        Ok(rows) => Ok(Outcome::Rows(rows)),
        Err(e @ (Error::CycleCapHit(_) | Error::TooManyCycleLengths(_))) => {
            Ok(Outcome::Excluded(format!("{instance}: {e}")))
        }
        Err(e) => Err(e),
    }
}

/// Bound rows for `samples` seeded random primitive digraphs of order up to
/// `n_max`, plus every primitive member of the requested chord families.
pub fn verify_bounds(params: &BoundsParams) -> Result<Report> {
    let BoundsParams {
        n_max,
        samples,
        seed,
        ..
    } = *params;
    if !(2..=RANDOM_ORDER_CAP).contains(&n_max) {
        return Err(Error::params(format!(
            "random sampling needs 2 <= n_max <= {RANDOM_ORDER_CAP}, got {n_max}"
        )));
    }
    let mut report = Report::new(format!(
        "bounds: seed={seed}, n_max={n_max}, samples={samples}"
    ));

    let sample = |count: u64, generate: fn(usize, u64, u64) -> Result<RandomInstance>| {
        (0..count)
            .into_par_iter()
            .map(|i| {
                let inst = generate(n_max, seed, i)?;
                let name = inst.name();
                classify(bound_rows(&name, i, &inst.digraph), name)
            })
            .collect::<Result<Vec<Outcome>>>()
    };
    let excluded_before = report.excluded.len();
    absorb(&mut report, sample(samples, random_primitive)?);
    report.findings.push(format!(
        "random sample: {samples} primitive digraphs, orders 2..={n_max}, densities cycling 0.05/0.1/0.2, {} excluded",
        report.excluded.len() - excluded_before
    ));
    if params.pair_samples > 0 {
        if n_max < 4 {
            return Err(Error::params(
                "cycle-pair sampling needs n_max >= 4".to_string(),
            ));
        }
        let excluded_before = report.excluded.len();
        absorb(&mut report, sample(params.pair_samples, random_cycle_pair)?);
        report.findings.push(format!(
            "cycle-pair sample: {} primitive digraphs, orders 4..={n_max}, {} excluded",
            params.pair_samples,
            report.excluded.len() - excluded_before
        ));
    }

    for &(n, g) in &params.chord_families {
        let family = chord_family(n, g)?;
        let outcomes: Vec<Outcome> = (0..family.len())
            .into_par_iter()
            .map(|i| {
                let spec = family.spec(i);
                let d = spec.build()?;
                if !d.is_primitive() {
                    return Ok(Outcome::Skipped);
                }
                let name = spec.to_string();
                classify(bound_rows(&name, i, &d), name)
            })
            .collect::<Result<_>>()?;
        let primitive = outcomes
            .iter()
            .filter(|o| !matches!(o, Outcome::Skipped))
            .count();
        let excluded_before = report.excluded.len();
        absorb(&mut report, outcomes);
        report.findings.push(format!(
            "chord family n={n} g={g}: {} members, {primitive} primitive, {} excluded",
            family.len(),
            report.excluded.len() - excluded_before
        ));
    }
    Ok(report.finish())
}

fn absorb(report: &mut Report, outcomes: Vec<Outcome>) {
    for o in outcomes {
        match o {
            Outcome::Rows(rows) => report.rows.extend(rows),
            Outcome::Excluded(e) => report.excluded.push(e),
            Outcome::Skipped => {}
        }
    }
}
