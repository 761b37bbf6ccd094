//! Digraphs on vertices `v_1..v_n` with loops allowed and no multi-arcs.
//!
//! A [`Digraph`] is its adjacency [`BoolMatrix`]; arc `(i, j)` is present
//! iff `a_{ij} = 1`. Public methods take 1-based vertex labels, internal
//! helpers work on 0-based indices.

mod cycles;

use std::fmt;
use std::str::FromStr;

pub use cycles::{
    cycle_profile, simple_cycles, visit_simple_cycles, Cycle, CycleProfile, CycleSearch, LengthSet,
    DEFAULT_CYCLE_CAP,
};

use crate::arithmetic::gcd;
use crate::error::{Error, Result};
use crate::iso::Permutation;
use crate::matrix::{full_mask, Bits, BoolMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    adj: BoolMatrix,
}

impl Digraph {
    pub fn empty(order: usize) -> Result<Self> {
        Ok(Self {
            adj: BoolMatrix::zeros(order)?,
        })
    }

    /// Builds a digraph from 1-based arcs; duplicates collapse.
    pub fn from_arcs(order: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut d = Self::empty(order)?;
        for (i, j) in arcs {
            d.add_arc(i, j)?;
        }
        Ok(d)
    }

    pub fn from_matrix(a: BoolMatrix) -> Self {
        Self { adj: a }
    }

    pub fn to_matrix(&self) -> BoolMatrix {
        self.adj.clone()
    }

    pub fn matrix(&self) -> &BoolMatrix {
        &self.adj
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.order()
    }

    pub fn add_arc(&mut self, from: usize, to: usize) -> Result<()> {
        let (i, j) = (self.index(from)?, self.index(to)?);
        self.adj.set(i, j, true);
        Ok(())
    }

    pub fn has_arc(&self, from: usize, to: usize) -> Result<bool> {
        Ok(self.adj.get(self.index(from)?, self.index(to)?))
    }

    /// Arcs in row-major order, 1-based.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|i| Bits(self.adj.row(i)).map(move |j| (i + 1, j + 1)))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.adj.count_ones()
    }

    pub(crate) fn index(&self, v: usize) -> Result<usize> {
        if v >= 1 && v <= self.order() {
            Ok(v - 1)
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    /// Out-neighbour bit set of 0-based vertex `u`.
    #[inline]
    pub(crate) fn succ(&self, u: usize) -> u64 {
        self.adj.row(u)
    }

    /// In-neighbour bit sets, indexed by 0-based vertex.
    pub(crate) fn predecessors(&self) -> Vec<u64> {
        let n = self.order();
        let mut pred = vec![0u64; n];
        for u in 0..n {
            for v in Bits(self.succ(u)) {
                pred[v] |= 1 << u;
            }
        }
        pred
    }

    pub fn out_degree(&self, v: usize) -> Result<usize> {
        Ok(self.succ(self.index(v)?).count_ones() as usize)
    }

    pub fn in_degree(&self, v: usize) -> Result<usize> {
        let j = self.index(v)?;
        Ok((0..self.order()).filter(|&i| self.adj.get(i, j)).count())
    }

    /// Vertices reachable from `start` (0-based) by walks of length ≥ 0.
    pub(crate) fn reach_from(&self, start: usize, succ: impl Fn(usize) -> u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let next = Bits(frontier).fold(0, |acc, u| acc | succ(u));
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        let all = full_mask(self.order());
        if self.reach_from(0, |u| self.succ(u)) != all {
            return false;
        }
        let pred = self.predecessors();
        self.reach_from(0, |u| pred[u]) == all
    }

    /// BFS distances from a 0-based source; `None` where unreachable.
    pub(crate) fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut seen = 1u64 << source;
        let mut frontier = seen;
        let mut level = 0;
        while frontier != 0 {
            level += 1;
            let next = Bits(frontier).fold(0, |acc, u| acc | self.succ(u)) & !seen;
            for v in Bits(next) {
                dist[v] = Some(level);
            }
            seen |= next;
            frontier = next;
        }
        dist
    }

    /// Length of the shortest directed path; `Ok(None)` when unreachable.
    pub fn distance(&self, from: usize, to: usize) -> Result<Option<usize>> {
        let (s, t) = (self.index(from)?, self.index(to)?);
        Ok(self.bfs(s)[t].map(|d| d as usize))
    }

    /// Length of the shortest cycle through each vertex (0-based), found as
    /// one plus the shortest path back from an in-neighbour. A loop counts 1.
    pub fn shortest_cycles_through(&self) -> Vec<Option<usize>> {
        let pred = self.predecessors();
        (0..self.order())
            .map(|v| {
                let dist = self.bfs(v);
                Bits(pred[v])
                    .filter_map(|u| dist[u])
                    .min()
                    .map(|d| d as usize + 1)
            })
            .collect()
    }

    /// Shortest cycle length, or `None` if the digraph is acyclic.
    pub fn girth(&self) -> Option<usize> {
        self.shortest_cycles_through().into_iter().flatten().min()
    }

    /// Gcd of all cycle lengths of a strongly connected digraph, computed
    /// from BFS levels: it equals the gcd of `level(u) + 1 - level(v)` over
    /// all arcs `(u, v)`. `None` when not strongly connected.
    pub fn period(&self) -> Option<u64> {
        if !self.is_strongly_connected() {
            return None;
        }
        let level = self.bfs(0);
        let mut p = 0u64;
        for u in 0..self.order() {
            let lu = level[u].expect("strongly connected") as i64;
            for v in Bits(self.succ(u)) {
                let lv = level[v].expect("strongly connected") as i64;
                p = gcd(p, (lu + 1 - lv).unsigned_abs());
            }
        }
        Some(p)
    }

    /// Strongly connected with cycle-length gcd 1.
    pub fn is_primitive(&self) -> bool {
        self.period() == Some(1)
    }

    /// Same order and `sub`'s arcs are a subset of `self`'s.
    pub fn contains_spanning(&self, sub: &Digraph) -> bool {
        sub.adj.is_dominated_by(&self.adj)
    }

    /// Applies a vertex relabeling: arc `(i, j)` becomes `(π(i), π(j))`.
    pub fn relabel(&self, perm: &Permutation) -> Result<Digraph> {
        let n = self.order();
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: perm.len(),
            });
        }
        let mut rows = vec![0u64; n];
        for u in 0..n {
            rows[perm.image0(u)] = Bits(self.succ(u)).fold(0, |acc, v| acc | 1 << perm.image0(v));
        }
        Ok(Digraph::from_matrix(BoolMatrix::from_rows(n, &rows)?))
    }
}

pub fn is_spanning_subgraph(sub: &Digraph, sup: &Digraph) -> bool {
    sup.contains_spanning(sub)
}

impl From<BoolMatrix> for Digraph {
    fn from(a: BoolMatrix) -> Self {
        Digraph::from_matrix(a)
    }
}

impl From<Digraph> for BoolMatrix {
    fn from(d: Digraph) -> Self {
        d.adj
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.order(), self.arcs())
    }
}

/// Same text format as the adjacency matrix.
impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.adj, f)
    }
}

impl FromStr for Digraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(Digraph::from_matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn matrix_conversion() {
        let z = Digraph::from_matrix(BoolMatrix::zeros(3).unwrap());
        assert_eq!(z.arc_count(), 0);
        let i = Digraph::from_matrix(BoolMatrix::identity(3).unwrap());
        assert_eq!(i.arcs(), vec![(1, 1), (2, 2), (3, 3)]);
        assert_eq!(
            BoolMatrix::from(i.clone()),
            BoolMatrix::identity(3).unwrap()
        );
    }

    #[test]
    fn strong_connectivity() {
        assert!(families::standard_cycle(7).unwrap().is_strongly_connected());
        let loops = Digraph::from_arcs(2, [(1, 1), (2, 2)]).unwrap();
        assert!(!loops.is_strongly_connected());
    }

    #[test]
    fn distances_on_standard_cycle() {
        let c = families::standard_cycle(10).unwrap();
        assert_eq!(c.distance(10, 4).unwrap(), Some(6));
        assert_eq!(c.distance(4, 4).unwrap(), Some(0));
        assert_eq!(c.distance(1, 10).unwrap(), Some(1));
        assert!(matches!(
            c.distance(0, 3),
            Err(Error::VertexOutOfRange {
                vertex: 0,
                order: 10
            })
        ));
        let loops = Digraph::from_arcs(2, [(1, 1)]).unwrap();
        assert_eq!(loops.distance(1, 2).unwrap(), None);
    }

    #[test]
    fn distance_in_chord_geometry() {
        // r < n - g + 1: d(v_n, v_{g+r}) = n - g - r
        for (n, g, r) in [(10, 3, 1), (10, 3, 2), (11, 4, 3), (9, 2, 1)] {
            let d = families::d_gn(n, g, &[r]).unwrap();
            assert_eq!(d.distance(n, g + r).unwrap(), Some(n - g - r));
        }
    }

    #[test]
    fn girth_examples() {
        assert_eq!(families::standard_cycle(9).unwrap().girth(), Some(9));
        assert_eq!(families::d_gn(10, 3, &[1]).unwrap().girth(), Some(3));
        assert!(families::h_graph(10, 4, 6)
            .unwrap_err()
            .to_string()
            .contains("gcd"));
        assert_eq!(families::h_graph(11, 4, 6).unwrap().girth(), Some(4));
        let loop1 = Digraph::from_arcs(3, [(1, 2), (2, 3), (3, 1), (2, 2)]).unwrap();
        assert_eq!(loop1.girth(), Some(1));
        let dag = Digraph::from_arcs(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(dag.girth(), None);
    }

    #[test]
    fn primitivity() {
        for n in 2..10 {
            assert!(!families::standard_cycle(n).unwrap().is_primitive());
        }
        assert!(families::d_gn(10, 3, &[1, 2]).unwrap().is_primitive());
        assert!(!families::d_gn(10, 3, &[1])
            .unwrap()
            .with_arc_removed(1, 10)
            .is_primitive());
    }

    #[test]
    fn spanning_subgraphs() {
        let c = families::standard_cycle(10).unwrap();
        let d = families::d_gn(10, 3, &[1, 3]).unwrap();
        assert!(is_spanning_subgraph(&c, &d));
        assert!(!is_spanning_subgraph(
            &families::d1(5).unwrap(),
            &families::standard_cycle(5).unwrap()
        ));
        assert!(is_spanning_subgraph(&d, &d));
        assert!(!is_spanning_subgraph(
            &c,
            &families::standard_cycle(9).unwrap()
        ));
    }

    impl Digraph {
        fn with_arc_removed(mut self, i: usize, j: usize) -> Self {
            self.adj.set(i - 1, j - 1, false);
            self
        }
    }
}
