//! Exact exponents, walk-length witnesses and C(S)-walk distances.

mod bounds;

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

pub use bounds::{
    formula_thm33, lemma23_bound, lemma25_bound, lemma26_bound, lemma32_bound, lemma34_bound,
    thm36_range, z_of_w, ExponentWindow,
};

use crate::arithmetic::frobenius_of;
use crate::error::{Error, Result};
use crate::graph::{cycle_profile, CycleProfile, Digraph, DEFAULT_CYCLE_CAP};
use crate::matrix::{Bits, BoolMatrix};

/// Most distinct cycle lengths the product-state search accepts.
pub const MAX_CYCLE_LENGTHS: usize = 20;

/// Largest exponent of a primitive digraph of order `n`: `(n-1)^2 + 1`.
pub fn wielandt(n: usize) -> u64 {
    ((n - 1) * (n - 1) + 1) as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentResult {
    pub value: u64,
    /// Lexicographically least 1-based pair `(u, v)` with no walk of length
    /// `value - 1` from `u` to `v`.
    pub certificate: Option<(usize, usize)>,
}

/// Least `k ≥ 1` with `A^k` all-positive, by successive multiplication.
pub fn exponent(d: &Digraph) -> Result<ExponentResult> {
    if !d.is_primitive() {
        return Err(Error::NonPrimitive);
    }
    exponent_of_matrix(d.matrix())
}

/// Exponent search without the primitivity pre-check; fails once the
/// Wielandt cap is passed.
pub(crate) fn exponent_of_matrix(a: &BoolMatrix) -> Result<ExponentResult> {
    let cap = wielandt(a.order());
    let mut prev = BoolMatrix::identity(a.order())?;
    let mut cur = a.clone();
    let mut k = 1;
    while !cur.is_all_positive() {
        if k >= cap {
            return Err(Error::NonPrimitive);
        }
        prev = cur;
        cur = prev.mul_unchecked(a);
        k += 1;
    }
    Ok(ExponentResult {
        value: k,
        certificate: prev.first_zero().map(|(i, j)| (i + 1, j + 1)),
    })
}

/// Whether a walk of exactly `length` arcs runs from `from` to `to`.
pub fn walk_exists(d: &Digraph, from: usize, to: usize, length: u64) -> Result<bool> {
    let (i, j) = (d.index(from)?, d.index(to)?);
    Ok(d.matrix().power(length).get(i, j))
}

/// `d_{C(S)}` for every ordered pair, plus the maximum `d(C(S))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CWalkResult {
    order: usize,
    per_pair: Vec<u32>,
    pub max: u32,
    /// Lexicographically least 1-based pair attaining `max`.
    pub arg_max: (usize, usize),
}

impl CWalkResult {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `d_{C(S)}(v_i, v_j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.per_pair[(i - 1) * self.order + (j - 1)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.per_pair.chunks(self.order)
    }
}

/// Shortest walks that meet a cycle of every length in `C(S)`.
///
/// A walk meets a `p`-cycle when it shares a vertex with some simple cycle
/// of length `p`; the zero-length walk at `v` meets every cycle through `v`.
/// Each source runs a BFS over states `(vertex, lengths met so far)`.
pub fn c_walk_distances(d: &Digraph) -> Result<CWalkResult> {
    let profile = cycle_profile(d, DEFAULT_CYCLE_CAP)?;
    c_walk_distances_with(d, &profile)
}

pub fn c_walk_distances_with(d: &Digraph, profile: &CycleProfile) -> Result<CWalkResult> {
    if !d.is_primitive() {
        return Err(Error::NonPrimitive);
    }
    profile.exact()?;
    let lengths = profile.lengths.to_vec();
    if lengths.len() > MAX_CYCLE_LENGTHS {
        return Err(Error::TooManyCycleLengths(lengths.len()));
    }
    let n = d.order();
    let u = lengths.len();
    // per-vertex membership compressed to indices into `lengths`
    let met: Vec<u32> = profile
        .per_vertex
        .iter()
        .map(|set| {
            lengths
                .iter()
                .enumerate()
                .filter(|(_, &l)| set.contains(l))
                .fold(0u32, |acc, (b, _)| acc | 1 << b)
        })
        .collect();
    let full = (1u32 << u) - 1;

    let mut per_pair = vec![u32::MAX; n * n];
    let mut search = StateSearch::new(n, u);
    for s in 0..n {
        search.run(d, &met, s, full, &mut per_pair[s * n..(s + 1) * n]);
    }
    if per_pair.contains(&u32::MAX) {
        // cannot happen for a strongly connected digraph
        return Err(Error::NonPrimitive);
    }
    let max = *per_pair.iter().max().expect("non-empty");
    let idx = per_pair
        .iter()
        .position(|&v| v == max)
        .expect("max is present");
    Ok(CWalkResult {
        order: n,
        per_pair,
        max,
        arg_max: (idx / n + 1, idx % n + 1),
    })
}

/// Visited-distance storage for the product BFS: dense while small, hashed
/// otherwise.
enum Dist {
    Dense(Vec<u32>),
    Sparse(HashMap<(usize, u32), u32>),
}

struct StateSearch {
    masks: usize,
    dist: Dist,
    queue: VecDeque<(usize, u32)>,
}

impl StateSearch {
    const DENSE_LIMIT: usize = 1 << 22;

    fn new(n: usize, u: usize) -> Self {
        let masks = 1usize << u;
        let dist = if n * masks <= Self::DENSE_LIMIT {
            Dist::Dense(vec![u32::MAX; n * masks])
        } else {
            Dist::Sparse(HashMap::new())
        };
        Self {
            masks,
            dist,
            queue: VecDeque::new(),
        }
    }

    fn visit(&mut self, v: usize, mask: u32, value: u32) -> bool {
        match &mut self.dist {
            Dist::Dense(table) => {
                let slot = &mut table[v * self.masks + mask as usize];
                if *slot == u32::MAX {
                    *slot = value;
                    true
                } else {
                    false
                }
            }
            Dist::Sparse(map) => match map.entry((v, mask)) {
                Entry::Occupied(_) => false,
                Entry::Vacant(slot) => {
                    slot.insert(value);
                    true
                }
            },
        }
    }

    fn get(&self, v: usize, mask: u32) -> u32 {
        match &self.dist {
            Dist::Dense(table) => table[v * self.masks + mask as usize],
            Dist::Sparse(map) => map.get(&(v, mask)).copied().unwrap_or(u32::MAX),
        }
    }

    fn run(&mut self, d: &Digraph, met: &[u32], source: usize, full: u32, out: &mut [u32]) {
        match &mut self.dist {
            Dist::Dense(table) => table.fill(u32::MAX),
            Dist::Sparse(map) => map.clear(),
        }
        self.queue.clear();
        self.visit(source, met[source], 0);
        self.queue.push_back((source, met[source]));
        let mut remaining = d.order();
        while let Some((v, mask)) = self.queue.pop_front() {
            let dv = self.get(v, mask);
            if mask == full && out[v] == u32::MAX {
                out[v] = dv;
                remaining -= 1;
                if remaining == 0 {
                    break;
                }
            }
            for w in Bits(d.succ(v)) {
                let m = mask | met[w];
                if self.visit(w, m, dv + 1) {
                    self.queue.push_back((w, m));
                }
            }
        }
    }
}

/// `d(C(S)) + φ(C(S))`, an upper bound on the exponent.
pub fn lemma22_bound(d: &Digraph) -> Result<u64> {
    let profile = cycle_profile(d, DEFAULT_CYCLE_CAP)?;
    lemma22_bound_with(d, &profile)
}

pub fn lemma22_bound_with(d: &Digraph, profile: &CycleProfile) -> Result<u64> {
    let cw = c_walk_distances_with(d, profile)?;
    let gens: Vec<u64> = profile.lengths.iter().map(|l| l as u64).collect();
    Ok(cw.max as u64 + frobenius_of(&gens)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn extremal_exponents() {
        assert_eq!(exponent(&families::d1(5).unwrap()).unwrap().value, 17);
        assert_eq!(exponent(&families::d2(5).unwrap()).unwrap().value, 16);
        assert_eq!(exponent(&families::d1(6).unwrap()).unwrap().value, 26);
        assert_eq!(exponent(&families::d2(6).unwrap()).unwrap().value, 25);
        let k3 = Digraph::from_matrix(BoolMatrix::all_ones(3).unwrap());
        let r = exponent(&k3).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.certificate, Some((1, 2)));
    }

    #[test]
    fn non_primitive_rejected() {
        assert!(matches!(
            exponent(&families::standard_cycle(6).unwrap()),
            Err(Error::NonPrimitive)
        ));
        let disconnected = Digraph::from_arcs(2, [(1, 1), (2, 2)]).unwrap();
        assert!(matches!(exponent(&disconnected), Err(Error::NonPrimitive)));
    }

    #[test]
    fn certificate_is_a_real_gap() {
        let d = families::d1(5).unwrap();
        let r = exponent(&d).unwrap();
        let (u, v) = r.certificate.unwrap();
        assert!(!walk_exists(&d, u, v, r.value - 1).unwrap());
        let prev = d.matrix().power(r.value - 1);
        assert_eq!(prev.first_zero(), Some((u - 1, v - 1)));
    }

    #[test]
    fn walks_on_the_standard_cycle() {
        let c = families::standard_cycle(10).unwrap();
        assert!(walk_exists(&c, 10, 4, 6).unwrap());
        assert!(!walk_exists(&c, 10, 4, 7).unwrap());
        assert!(walk_exists(&c, 10, 4, 16).unwrap());
        assert!(walk_exists(&c, 3, 3, 0).unwrap());
        assert!(walk_exists(&c, 11, 3, 0).is_err());
    }

    #[test]
    fn chord_witness_has_no_walk() {
        let q1 = families::q1(10, 3).unwrap();
        let w = formula_thm33(10, 3, 1).unwrap();
        assert!(!walk_exists(&q1, 10, 4, w - 1).unwrap());
        assert!(walk_exists(&q1, 10, 4, w).unwrap());
    }

    #[test]
    fn cwalk_complete_coverage_equals_distance() {
        // every vertex lies on a 1-cycle and a 2-cycle
        let d = Digraph::from_arcs(
            4,
            [
                (1, 1),
                (2, 2),
                (3, 3),
                (4, 4),
                (1, 2),
                (2, 1),
                (2, 3),
                (3, 2),
                (3, 4),
                (4, 3),
            ],
        )
        .unwrap();
        let cw = c_walk_distances(&d).unwrap();
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(cw.get(i, j) as usize, d.distance(i, j).unwrap().unwrap());
            }
        }
        assert_eq!(cw.max, 3);
        assert_eq!(cw.arg_max, (1, 4));
    }

    #[test]
    fn cwalk_q1_attains_at_argued_pair() {
        let q1 = families::q1(10, 3).unwrap();
        let cw = c_walk_distances(&q1).unwrap();
        assert_eq!(cw.get(10, 4), 16);
        assert_eq!(cw.max, 16);
        assert_eq!(lemma22_bound(&q1).unwrap(), 34);
        assert_eq!(exponent(&q1).unwrap().value, 34);
    }

    #[test]
    fn cwalk_with_loop() {
        // a loop makes φ = 0 so the bound is d(C(S)) itself
        let d = Digraph::from_arcs(3, [(1, 2), (2, 3), (3, 1), (1, 1)]).unwrap();
        let cw = c_walk_distances(&d).unwrap();
        assert_eq!(lemma22_bound(&d).unwrap(), cw.max as u64);
        assert!(exponent(&d).unwrap().value <= cw.max as u64);
    }

    #[test]
    fn cwalk_rejects_non_primitive() {
        assert!(matches!(
            c_walk_distances(&families::standard_cycle(5).unwrap()),
            Err(Error::NonPrimitive)
        ));
    }

    #[test]
    fn sparse_and_dense_tables_agree() {
        let d = families::d_gn(11, 4, &[1, 3]).unwrap();
        let profile = cycle_profile(&d, DEFAULT_CYCLE_CAP).unwrap();
        let lengths = profile.lengths.to_vec();
        let dense = c_walk_distances_with(&d, &profile).unwrap();
        let met: Vec<u32> = profile
            .per_vertex
            .iter()
            .map(|s| {
                lengths
                    .iter()
                    .enumerate()
                    .filter(|(_, &l)| s.contains(l))
                    .fold(0, |a, (b, _)| a | 1 << b)
            })
            .collect();
        let n = d.order();
        let mut search = StateSearch {
            masks: 1 << lengths.len(),
            dist: Dist::Sparse(HashMap::new()),
            queue: VecDeque::new(),
        };
        for s in 0..n {
            let mut out = vec![u32::MAX; n];
            search.run(&d, &met, s, (1 << lengths.len()) - 1, &mut out);
            for (t, &d) in out.iter().enumerate() {
                assert_eq!(d, dense.get(s + 1, t + 1));
            }
        }
    }
}
