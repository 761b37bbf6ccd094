//! Simple-cycle enumeration (Johnson's circuit algorithm on bit sets) and
//! the cycle-length profile built from it.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::Digraph;
use crate::error::{Error, Result};
use crate::matrix::Bits;

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// A set of cycle lengths in `1..=64`; bit `l - 1` stands for length `l`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LengthSet(pub u64);

impl LengthSet {
    pub fn insert(&mut self, len: usize) {
        debug_assert!((1..=64).contains(&len));
        self.0 |= 1 << (len - 1);
    }

    pub fn contains(&self, len: usize) -> bool {
        (1..=64).contains(&len) && self.0 >> (len - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn shortest(&self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn longest(&self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        Bits(self.0).map(|b| b + 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(self, other: LengthSet) -> LengthSet {
        LengthSet(self.0 | other.0)
    }
}

impl FromIterator<usize> for LengthSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = LengthSet::default();
        for l in iter {
            s.insert(l);
        }
        s
    }
}

impl fmt::Debug for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for LengthSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for LengthSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = v.iter().find(|l| !(1..=64).contains(*l)) {
            return Err(serde::de::Error::custom(format!(
                "cycle length {bad} out of range"
            )));
        }
        Ok(v.into_iter().collect())
    }
}

/// A simple cycle as its 1-based vertex sequence, starting from its
/// smallest vertex. The closing arc back to the first vertex is implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle(pub Vec<usize>);

impl Cycle {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }
}

/// Cycle-length set `C(S)` together with the lengths seen through each
/// vertex. When `cap_hit` is set both are lower approximations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleProfile {
    pub lengths: LengthSet,
    /// Indexed by 0-based vertex.
    pub per_vertex: Vec<LengthSet>,
    pub cycle_count: usize,
    pub cap_hit: bool,
}

impl CycleProfile {
    fn new(n: usize) -> Self {
        Self {
            lengths: LengthSet::default(),
            per_vertex: vec![LengthSet::default(); n],
            cycle_count: 0,
            cap_hit: false,
        }
    }

    fn record(&mut self, cycle: &[usize]) {
        let len = cycle.len();
        self.lengths.insert(len);
        for &v in cycle {
            self.per_vertex[v].insert(len);
        }
        self.cycle_count += 1;
    }

    pub fn girth(&self) -> Option<usize> {
        self.lengths.shortest()
    }

    /// Errors out if the enumeration was truncated.
    pub fn exact(&self) -> Result<&Self> {
        if self.cap_hit {
            Err(Error::CycleCapHit(self.cycle_count))
        } else {
            Ok(self)
        }
    }

    /// Lengths of cycles through the 1-based vertex `v`.
    pub fn through(&self, v: usize) -> LengthSet {
        self.per_vertex[v - 1]
    }
}

#[derive(Clone, Debug)]
pub struct CycleSearch {
    pub cycles: Vec<Cycle>,
    pub profile: CycleProfile,
}

struct Johnson<'a> {
    d: &'a Digraph,
    blocked: u64,
    // b[w]: vertices to unblock once w is unblocked
    b: Vec<u64>,
    stack: Vec<usize>,
}

impl<'a> Johnson<'a> {
    fn unblock(&mut self, u: usize) {
        self.blocked &= !(1 << u);
        let pending = std::mem::take(&mut self.b[u]);
        for w in Bits(pending) {
            if self.blocked >> w & 1 == 1 {
                self.unblock(w);
            }
        }
    }

    fn circuit<F>(
        &mut self,
        v: usize,
        s: usize,
        allowed: u64,
        visit: &mut F,
    ) -> ControlFlow<(), bool>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut found = false;
        self.stack.push(v);
        self.blocked |= 1 << v;
        let next = self.d.succ(v) & allowed;
        for w in Bits(next) {
            if w == s {
                visit(&self.stack)?;
                found = true;
            } else if self.blocked >> w & 1 == 0 && self.circuit(w, s, allowed, visit)? {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for w in Bits(next) {
                self.b[w] |= 1 << v;
            }
        }
        self.stack.pop();
        ControlFlow::Continue(found)
    }
}

/// Calls `visit` with every simple cycle as a 0-based vertex sequence
/// starting at its smallest vertex. Stops early on `Break`.
pub fn visit_simple_cycles<F>(d: &Digraph, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = d.order();
    let pred = d.predecessors();
    let mut j = Johnson {
        d,
        blocked: 0,
        b: vec![0; n],
        stack: Vec::with_capacity(n),
    };
    for s in 0..n {
        let ge = !((1u64 << s) - 1);
        // strong component of s inside the subgraph induced by {s, s+1, ...}
        let fwd = d.reach_from(s, |u| d.succ(u) & ge);
        let bwd = d.reach_from(s, |u| pred[u] & ge);
        let allowed = fwd & bwd;
        if d.succ(s) & allowed == 0 {
            continue;
        }
        j.blocked = 0;
        for w in Bits(allowed) {
            j.b[w] = 0;
        }
        j.circuit(s, s, allowed, &mut visit)?;
    }
    ControlFlow::Continue(())
}

/// Enumerates simple cycles up to `cap` of them.
pub fn simple_cycles(d: &Digraph, cap: usize) -> Result<CycleSearch> {
    if cap == 0 {
        return Err(Error::params("cycle cap must be at least 1"));
    }
    let mut cycles = Vec::new();
    let mut profile = CycleProfile::new(d.order());
    let flow = visit_simple_cycles(d, |c| {
        profile.record(c);
        cycles.push(Cycle(c.iter().map(|v| v + 1).collect()));
        if profile.cycle_count >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    profile.cap_hit = flow.is_break();
    Ok(CycleSearch { cycles, profile })
}

/// Like [`simple_cycles`] without materialising the cycle list.
pub fn cycle_profile(d: &Digraph, cap: usize) -> Result<CycleProfile> {
    if cap == 0 {
        return Err(Error::params("cycle cap must be at least 1"));
    }
    let mut profile = CycleProfile::new(d.order());
    let flow = visit_simple_cycles(d, |c| {
        profile.record(c);
        if profile.cycle_count >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    profile.cap_hit = flow.is_break();
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn single_cycle() {
        let s = simple_cycles(&families::standard_cycle(7).unwrap(), DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(s.cycles.len(), 1);
        assert_eq!(s.profile.lengths.to_vec(), vec![7]);
        assert_eq!(s.cycles[0].vertices(), &[1, 7, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn d1_profile() {
        let p = cycle_profile(&families::d1(6).unwrap(), DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(p.lengths.to_vec(), vec![5, 6]);
        for v in 1..=6 {
            assert!(p.through(v).contains(6));
            assert_eq!(p.through(v).contains(5), v <= 5, "vertex {v}");
        }
    }

    #[test]
    fn d2_has_two_lengths() {
        let p = cycle_profile(&families::d2(7).unwrap(), DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(p.lengths.len(), 2);
        assert_eq!(p.lengths.to_vec(), vec![6, 7]);
    }

    #[test]
    fn loops_and_two_cycles() {
        let d = Digraph::from_arcs(3, [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 3)]).unwrap();
        let s = simple_cycles(&d, DEFAULT_CYCLE_CAP).unwrap();
        let mut got: Vec<_> = s.cycles.iter().map(|c| c.0.clone()).collect();
        got.sort();
        assert_eq!(got, vec![vec![1], vec![1, 2], vec![2, 3], vec![3]]);
    }

    #[test]
    fn complete_digraph_cycle_count() {
        // complete digraph with loops on 5 vertices: sum_k C(5,k)(k-1)!
        let d = Digraph::from_matrix(crate::BoolMatrix::all_ones(5).unwrap());
        let p = cycle_profile(&d, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(p.cycle_count, 5 + 10 + 20 + 30 + 24);
    }

    #[test]
    fn cap_is_reported() {
        let d = Digraph::from_matrix(crate::BoolMatrix::all_ones(6).unwrap());
        let s = simple_cycles(&d, 10).unwrap();
        assert!(s.profile.cap_hit);
        assert_eq!(s.cycles.len(), 10);
        assert!(matches!(s.profile.exact(), Err(Error::CycleCapHit(10))));
        assert!(simple_cycles(&d, 0).is_err());
    }

    #[test]
    fn length_set_ops() {
        let s: LengthSet = [3, 10, 1, 64].into_iter().collect();
        assert_eq!(s.to_vec(), vec![1, 3, 10, 64]);
        assert_eq!(s.shortest(), Some(1));
        assert_eq!(s.longest(), Some(64));
        assert!(!s.contains(0) && !s.contains(65));
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3,10,64]");
    }
}
