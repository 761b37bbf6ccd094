//! Named digraph constructions and their parameter spaces.
//!
//! The standard `n`-cycle runs *downwards*, `v_n → v_{n-1} → … → v_1 → v_n`,
//! and every chord family is built on top of it. `H` is the exception: its
//! `n`-cycle runs upwards, `v_1 → v_2 → … → v_n → v_1`.
//!
//! Chord index sets `N ⊆ {1..t}` are carried as bit masks, bit `i - 1` for
//! index `i`.

use std::fmt;
use std::str::FromStr;

use crate::arithmetic::gcd;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::matrix::{check_order, Bits};

/// `t = min(n - g + 1, g)`, the largest admissible chord index.
pub fn chord_limit(n: usize, g: usize) -> usize {
    (n + 1).saturating_sub(g).min(g)
}

fn params(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

pub fn standard_cycle(n: usize) -> Result<Digraph> {
    check_order(n)?;
    let arcs = (2..=n).map(|j| (j, j - 1)).chain([(1, n)]);
    Digraph::from_arcs(n, arcs)
}

/// Standard cycle plus the chord `v_1 → v_{n-1}`.
pub fn d1(n: usize) -> Result<Digraph> {
    if n < 3 {
        return Err(params(format!("D1 needs n >= 3, got {n}")));
    }
    let mut d = standard_cycle(n)?;
    d.add_arc(1, n - 1)?;
    Ok(d)
}

/// `D1` plus the chord `v_2 → v_n`.
pub fn d2(n: usize) -> Result<Digraph> {
    let mut d = d1(n)?;
    d.add_arc(2, n)?;
    Ok(d)
}

fn check_chord_params(n: usize, g: usize) -> Result<()> {
    check_order(n)?;
    if !(1..n).contains(&g) {
        return Err(params(format!(
            "girth g={g} must satisfy 1 <= g <= n-1 (n={n})"
        )));
    }
    if gcd(n as u64, g as u64) != 1 {
        return Err(params(format!(
            "gcd(n, g) must be 1, got gcd({n}, {g}) = {}",
            gcd(n as u64, g as u64)
        )));
    }
    Ok(())
}

fn chord_mask(n: usize, g: usize, chords: &[usize]) -> Result<u64> {
    check_chord_params(n, g)?;
    if chords.is_empty() {
        return Err(params("chord index set N must be non-empty".into()));
    }
    let t = chord_limit(n, g);
    let mut mask = 0u64;
    for &i in chords {
        if !(1..=t).contains(&i) {
            return Err(params(format!("chord index {i} outside F = {{1..{t}}}")));
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

/// Standard cycle plus chords `v_i → v_{g+i-1}` for `i ∈ N`; each chord
/// closes the `g`-cycle `v_i → v_{g+i-1} → v_{g+i-2} → … → v_i`.
pub fn d_gn(n: usize, g: usize, chords: &[usize]) -> Result<Digraph> {
    let mask = chord_mask(n, g, chords)?;
    d_gn_mask(n, g, mask)
}

fn d_gn_mask(n: usize, g: usize, mask: u64) -> Result<Digraph> {
    let mut d = standard_cycle(n)?;
    for b in Bits(mask) {
        let i = b + 1;
        d.add_arc(i, g + i - 1)?;
    }
    Ok(d)
}

pub fn q1(n: usize, g: usize) -> Result<Digraph> {
    d_gn(n, g, &[1])
}

pub fn q2(n: usize, g: usize) -> Result<Digraph> {
    d_gn(n, g, &[1, 2])
}

fn check_h_params(n: usize, g: usize, k: usize) -> Result<()> {
    check_chord_params(n, g)?;
    if n < 2 * g {
        return Err(params(format!("H needs n >= 2g, got n={n}, g={g}")));
    }
    if k < g + 1 || k > n + 1 - g {
        return Err(params(format!(
            "H needs g+1 <= k and g+k-1 <= n, got n={n}, g={g}, k={k}"
        )));
    }
    Ok(())
}

/// Upward `n`-cycle with two vertex-disjoint `g`-cycles, closed by the
/// chords `v_g → v_1` and `v_{k+g-1} → v_k`.
pub fn h_graph(n: usize, g: usize, k: usize) -> Result<Digraph> {
    check_h_params(n, g, k)?;
    let arcs = (1..n)
        .map(|j| (j, j + 1))
        .chain([(n, 1), (g, 1), (k + g - 1, k)]);
    Digraph::from_arcs(n, arcs)
}

/// Standard cycle plus the span-`g` chord at every cyclic position in
/// `mask` (bit `i - 1` for position `i`): `v_i → v_{((g+i-2) mod n) + 1}`.
pub fn chord_member(n: usize, g: usize, mask: u64) -> Result<Digraph> {
    check_chord_family(n, g)?;
    if mask == 0 || mask >> n != 0 {
        return Err(params(format!(
            "chord mask {mask:#x} must be a non-empty subset of {n} positions"
        )));
    }
    let mut d = standard_cycle(n)?;
    for b in Bits(mask) {
        let i = b + 1;
        d.add_arc(i, (g + i - 2) % n + 1)?;
    }
    Ok(d)
}

fn check_chord_family(n: usize, g: usize) -> Result<()> {
    check_order(n)?;
    if n > 63 {
        return Err(Error::OrderCapExceeded { order: n, cap: 63 });
    }
    if !(2..n).contains(&g) {
        return Err(params(format!(
            "chord family needs 2 <= g <= n-1, got n={n}, g={g}"
        )));
    }
    Ok(())
}

/// One constructed digraph, addressed by its family and parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    StandardCycle { n: usize },
    D1 { n: usize },
    D2 { n: usize },
    DgN { n: usize, g: usize, chords: u64 },
    Q1 { n: usize, g: usize },
    Q2 { n: usize, g: usize },
    H { n: usize, g: usize, k: usize },
    ChordFamilyMember { n: usize, g: usize, mask: u64 },
}

impl FamilySpec {
    pub fn d_gn(n: usize, g: usize, chords: &[usize]) -> Result<Self> {
        Ok(FamilySpec::DgN {
            n,
            g,
            chords: chord_mask(n, g, chords)?,
        })
    }

    pub fn n(&self) -> usize {
        match *self {
            FamilySpec::StandardCycle { n }
            | FamilySpec::D1 { n }
            | FamilySpec::D2 { n }
            | FamilySpec::DgN { n, .. }
            | FamilySpec::Q1 { n, .. }
            | FamilySpec::Q2 { n, .. }
            | FamilySpec::H { n, .. }
            | FamilySpec::ChordFamilyMember { n, .. } => n,
        }
    }

    /// The girth parameter, where the family has one.
    pub fn g(&self) -> Option<usize> {
        match *self {
            FamilySpec::StandardCycle { .. } | FamilySpec::D1 { .. } | FamilySpec::D2 { .. } => {
                None
            }
            FamilySpec::DgN { g, .. }
            | FamilySpec::Q1 { g, .. }
            | FamilySpec::Q2 { g, .. }
            | FamilySpec::H { g, .. }
            | FamilySpec::ChordFamilyMember { g, .. } => Some(g),
        }
    }

    /// Chord index set `N` in ascending order, for the `D_{g,N}` kinds.
    pub fn chords(&self) -> Option<Vec<usize>> {
        match *self {
            FamilySpec::DgN { chords, .. } => Some(Bits(chords).map(|b| b + 1).collect()),
            FamilySpec::Q1 { .. } => Some(vec![1]),
            FamilySpec::Q2 { .. } => Some(vec![1, 2]),
            _ => None,
        }
    }

    /// `r = max(N)`.
    pub fn r(&self) -> Option<usize> {
        self.chords().and_then(|c| c.last().copied())
    }

    pub fn t(&self) -> Option<usize> {
        self.g().map(|g| chord_limit(self.n(), g))
    }

    pub fn build(&self) -> Result<Digraph> {
        match *self {
            FamilySpec::StandardCycle { n } => standard_cycle(n),
            FamilySpec::D1 { n } => d1(n),
            FamilySpec::D2 { n } => d2(n),
            FamilySpec::DgN { n, g, chords } => {
                let list: Vec<usize> = Bits(chords).map(|b| b + 1).collect();
                d_gn(n, g, &list)
            }
            FamilySpec::Q1 { n, g } => q1(n, g),
            FamilySpec::Q2 { n, g } => q2(n, g),
            FamilySpec::H { n, g, k } => h_graph(n, g, k),
            FamilySpec::ChordFamilyMember { n, g, mask } => chord_member(n, g, mask),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::StandardCycle { .. } => "cycle",
            FamilySpec::D1 { .. } => "d1",
            FamilySpec::D2 { .. } => "d2",
            FamilySpec::DgN { .. } => "d_gN",
            FamilySpec::Q1 { .. } => "q1",
            FamilySpec::Q2 { .. } => "q2",
            FamilySpec::H { .. } => "h",
            FamilySpec::ChordFamilyMember { .. } => "chord",
        }
    }
}

/// `kind:key=value,...`, e.g. `d_gN:n=10,g=3,N=1,2`.
impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:n={}", self.kind(), self.n())?;
        match *self {
            FamilySpec::DgN { g, chords, .. } => {
                write!(f, ",g={g},N=")?;
                for (k, b) in Bits(chords).enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", b + 1)?;
                }
                Ok(())
            }
            FamilySpec::Q1 { g, .. } | FamilySpec::Q2 { g, .. } => write!(f, ",g={g}"),
            FamilySpec::H { g, k, .. } => write!(f, ",g={g},k={k}"),
            FamilySpec::ChordFamilyMember { g, mask, .. } => write!(f, ",g={g},mask={mask}"),
            _ => Ok(()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses the rendered form. Only syntax and key presence are checked
    /// here; [`FamilySpec::build`] enforces each family's constraints.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse {
            line: 1,
            message: msg,
        };
        let (kind, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| bad(format!("expected kind:key=value,..., got {s:?}")))?;

        let mut n = None;
        let mut g = None;
        let mut k = None;
        let mut mask = None;
        let mut chords: Option<Vec<usize>> = None;
        let mut last_key = "";
        for token in rest.split(',') {
            let token = token.trim();
            let (key, value) = match token.split_once('=') {
                Some((key, value)) => (key.trim(), value.trim()),
                // bare values continue the N list: N=1,2,3
                None if last_key == "N" => ("N+", token),
                None => return Err(bad(format!("expected key=value, got {token:?}"))),
            };
            let num = |v: &str| -> Result<u64> {
                v.parse::<u64>()
                    .map_err(|_| bad(format!("{key}: expected a non-negative integer, got {v:?}")))
            };
            let dup = |key: &str| bad(format!("duplicate key {key}"));
            match key {
                "n" if n.is_none() => n = Some(num(value)? as usize),
                "g" if g.is_none() => g = Some(num(value)? as usize),
                "k" if k.is_none() => k = Some(num(value)? as usize),
                "mask" if mask.is_none() => mask = Some(num(value)?),
                "N" if chords.is_none() => chords = Some(vec![num(value)? as usize]),
                "N+" => chords.as_mut().expect("N seen").push(num(value)? as usize),
                "n" | "g" | "k" | "mask" | "N" => return Err(dup(key)),
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
            if key != "N+" {
                last_key = key;
            }
        }

        let need =
            |v: Option<usize>, key: &str| v.ok_or_else(|| bad(format!("{kind} needs key {key}")));
        let allowed: &[&str] = match kind {
            "cycle" | "d1" | "d2" => &["n"],
            "q1" | "q2" => &["n", "g"],
            "d_gN" => &["n", "g", "N"],
            "h" => &["n", "g", "k"],
            "chord" => &["n", "g", "mask"],
            other => return Err(bad(format!("unknown family kind {other:?}"))),
        };
        for (key, present) in [
            ("g", g.is_some()),
            ("k", k.is_some()),
            ("mask", mask.is_some()),
            ("N", chords.is_some()),
        ] {
            if present && !allowed.contains(&key) {
                return Err(bad(format!("{kind} does not take key {key}")));
            }
        }
        let n = need(n, "n")?;
        Ok(match kind {
            "cycle" => FamilySpec::StandardCycle { n },
            "d1" => FamilySpec::D1 { n },
            "d2" => FamilySpec::D2 { n },
            "q1" => FamilySpec::Q1 {
                n,
                g: need(g, "g")?,
            },
            "q2" => FamilySpec::Q2 {
                n,
                g: need(g, "g")?,
            },
            "h" => FamilySpec::H {
                n,
                g: need(g, "g")?,
                k: need(k, "k")?,
            },
            "chord" => FamilySpec::ChordFamilyMember {
                n,
                g: need(g, "g")?,
                mask: mask.ok_or_else(|| bad("chord needs key mask".into()))?,
            },
            _ => {
                let list = chords.ok_or_else(|| bad("d_gN needs key N".into()))?;
                let mut bits = 0u64;
                for i in list {
                    if !(1..=64).contains(&i) {
                        return Err(bad(format!("chord index {i} out of range 1..=64")));
                    }
                    if bits >> (i - 1) & 1 == 1 {
                        return Err(bad(format!("chord index {i} repeated")));
                    }
                    bits |= 1 << (i - 1);
                }
                FamilySpec::DgN {
                    n,
                    g: need(g, "g")?,
                    chords: bits,
                }
            }
        })
    }
}

fn check_dgn_family(n: usize, g: usize) -> Result<usize> {
    check_chord_params(n, g)?;
    Ok(chord_limit(n, g))
}

/// Every nonempty `N ⊆ {1..t}`, in ascending bit-pattern order.
pub fn enumerate_dgn(n: usize, g: usize) -> Result<Vec<FamilySpec>> {
    let t = check_dgn_family(n, g)?;
    Ok((1..1u64 << t)
        .map(|chords| FamilySpec::DgN { n, g, chords })
        .collect())
}

/// The class `D^r`: every `N ⊆ {1..t}` with `max(N) = r`, ascending.
pub fn enumerate_dr(n: usize, g: usize, r: usize) -> Result<Vec<FamilySpec>> {
    let t = check_dgn_family(n, g)?;
    if !(1..=t).contains(&r) {
        return Err(params(format!("need 1 <= r <= t = {t}, got r={r}")));
    }
    Ok((1u64 << (r - 1)..1u64 << r)
        .map(|chords| FamilySpec::DgN { n, g, chords })
        .collect())
}

/// All `2^n - 1` rotational chord placements on the standard `n`-cycle,
/// indexed by `mask - 1`.
#[derive(Clone, Copy, Debug)]
pub struct ChordFamily {
    n: usize,
    g: usize,
}

impl ChordFamily {
    pub fn len(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spec(&self, index: u64) -> FamilySpec {
        FamilySpec::ChordFamilyMember {
            n: self.n,
            g: self.g,
            mask: index + 1,
        }
    }

    pub fn get(&self, index: u64) -> Result<Digraph> {
        chord_member(self.n, self.g, index + 1)
    }

    /// Members from `start` on, for resuming a partitioned scan.
    pub fn iter_from(&self, start: u64) -> impl Iterator<Item = (FamilySpec, Digraph)> + '_ {
        (start..self.len()).map(move |i| {
            let d = self.get(i).expect("parameters validated");
            (self.spec(i), d)
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (FamilySpec, Digraph)> + '_ {
        self.iter_from(0)
    }
}

pub fn chord_family(n: usize, g: usize) -> Result<ChordFamily> {
    check_chord_family(n, g)?;
    Ok(ChordFamily { n, g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_profile, DEFAULT_CYCLE_CAP};

    #[test]
    fn standard_cycle_arcs() {
        let c = standard_cycle(3).unwrap();
        let mut arcs = c.arcs();
        arcs.sort();
        assert_eq!(arcs, vec![(1, 3), (2, 1), (3, 2)]);
        assert!(standard_cycle(1).is_err());
    }

    #[test]
    fn d1_d2_arcs() {
        let mut arcs = d1(4).unwrap().arcs();
        arcs.sort();
        assert_eq!(arcs, vec![(1, 3), (1, 4), (2, 1), (3, 2), (4, 3)]);
        assert!(d2(5).unwrap().has_arc(2, 5).unwrap());
        assert!(d1(2).is_err());
        for n in 3..12 {
            let p = cycle_profile(&d1(n).unwrap(), DEFAULT_CYCLE_CAP).unwrap();
            assert_eq!(p.lengths.to_vec(), vec![n - 1, n]);
        }
    }

    #[test]
    fn dgn_construction() {
        let mut arcs = d_gn(10, 3, &[1]).unwrap().arcs();
        arcs.retain(|&(i, j)| !(j + 1 == i || (i, j) == (1, 10)));
        assert_eq!(arcs, vec![(1, 3)]);
        for n in 3..15 {
            assert_eq!(d_gn(n, n - 1, &[1]).unwrap(), d1(n).unwrap());
            assert_eq!(d_gn(n, n - 1, &[1, 2]).unwrap(), d2(n).unwrap());
        }
        let d = d_gn(10, 7, &[1, 2]).unwrap();
        assert_eq!(d.girth(), Some(7));
        let p = cycle_profile(&d, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(p.lengths.to_vec(), vec![7, 10]);
    }

    #[test]
    fn dgn_errors_name_the_constraint() {
        assert!(d_gn(10, 4, &[1]).unwrap_err().to_string().contains("gcd"));
        assert!(d_gn(10, 3, &[])
            .unwrap_err()
            .to_string()
            .contains("non-empty"));
        assert!(d_gn(10, 3, &[4])
            .unwrap_err()
            .to_string()
            .contains("outside F"));
        assert!(d_gn(10, 10, &[1]).is_err());
    }

    #[test]
    fn q_families() {
        assert_eq!(q1(10, 3).unwrap(), d_gn(10, 3, &[1]).unwrap());
        assert_eq!(q2(10, 3).unwrap(), d_gn(10, 3, &[1, 2]).unwrap());
        // t = 1 when g = 1
        assert!(q2(10, 1).is_err());
    }

    #[test]
    fn h_construction() {
        let h = h_graph(10, 3, 5).unwrap();
        let p = cycle_profile(&h, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(p.lengths.to_vec(), vec![3, 10]);
        let c1: Vec<usize> = (1..=10).filter(|&v| p.through(v).contains(3)).collect();
        assert_eq!(c1, vec![1, 2, 3, 5, 6, 7]);
        assert!(h.has_arc(3, 1).unwrap() && h.has_arc(7, 5).unwrap());
        assert!(h_graph(10, 3, 3).is_err());
        assert!(h_graph(10, 3, 9).is_err());
        assert!(h_graph(11, 6, 7).is_err());
        // n = 2g forces gcd(n, g) = g, so only g = 1 realises that geometry
        assert!(h_graph(6, 3, 4).unwrap_err().to_string().contains("gcd"));
        assert!(h_graph(2, 1, 2).is_ok());
    }

    #[test]
    fn enumerations() {
        let all = enumerate_dgn(10, 3).unwrap();
        assert_eq!(all.len(), 7);
        let d2r: Vec<_> = enumerate_dr(10, 3, 2)
            .unwrap()
            .iter()
            .map(|s| s.chords().unwrap())
            .collect();
        assert_eq!(d2r, vec![vec![2], vec![1, 2]]);
        for (n, g) in [(10, 3), (11, 5), (13, 6)] {
            let t = chord_limit(n, g);
            for r in 1..=t {
                let class = enumerate_dr(n, g, r).unwrap();
                assert_eq!(class.len(), 1 << (r - 1));
                assert!(class.iter().all(|s| s.r() == Some(r)));
            }
            assert!(enumerate_dr(n, g, t + 1).is_err());
        }
    }

    #[test]
    fn chord_family_members() {
        let fam = chord_family(10, 3).unwrap();
        assert_eq!(fam.len(), 1023);
        assert_eq!(fam.get(0).unwrap(), q1(10, 3).unwrap());
        // position 10 wraps: v_10 -> v_2
        assert!(chord_member(10, 3, 1 << 9).unwrap().has_arc(10, 2).unwrap());
        let (spec, d) = fam.iter_from(1022).next().unwrap();
        assert_eq!(spec.to_string(), "chord:n=10,g=3,mask=1023");
        assert_eq!(d.arc_count(), 20);
        assert!(chord_family(10, 1).is_err());
        assert!(chord_member(10, 3, 0).is_err());
        assert!(chord_member(10, 3, 1 << 10).is_err());
    }

    #[test]
    fn spec_text_form() {
        let s: FamilySpec = "d_gN:n=10,g=3,N=1,2".parse().unwrap();
        assert_eq!(
            s,
            FamilySpec::DgN {
                n: 10,
                g: 3,
                chords: 0b11
            }
        );
        assert_eq!(s.to_string(), "d_gN:n=10,g=3,N=1,2");
        assert_eq!(s.r(), Some(2));
        assert_eq!(s.t(), Some(3));
        for text in [
            "cycle:n=5",
            "d1:n=5",
            "d2:n=7",
            "q1:n=10,g=3",
            "q2:n=10,g=3",
            "h:n=10,g=3,k=5",
            "chord:n=10,g=3,mask=5",
        ] {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            spec.build().unwrap();
        }
        for bad in [
            "",
            "d1",
            "d1:",
            "d1:n=x",
            "foo:n=3",
            "d1:n=3,g=2",
            "q1:n=10",
            "d_gN:n=10,g=3",
            "d_gN:n=10,g=3,N=1,1",
            "d1:n=3,n=4",
            "d_gN:n=10,3",
        ] {
            assert!(
                bad.parse::<FamilySpec>().is_err(),
                "{bad:?} should not parse"
            );
        }
        // syntactically fine, semantically invalid
        let s: FamilySpec = "d_gN:n=10,g=4,N=1".parse().unwrap();
        assert!(s.build().is_err());
    }
}
