//! Isomorphism testing and canonical forms for small digraphs.
//!
//! `are_isomorphic` is a plain backtracking search over vertex bijections,
//! pruned by cheap vertex invariants and arc consistency. `canonical_form`
//! is independent of it: an individualization-refinement search that keeps
//! the smallest relabelled adjacency matrix among the leaves and skips
//! branches equivalent under automorphisms already found.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{cycle_profile, Digraph, LengthSet};
use crate::matrix::{Bits, BoolMatrix};

pub const ISO_ORDER_CAP: usize = 14;
pub const CANON_ORDER_CAP: usize = 12;

/// Cycle enumeration budget for the cycle-length vertex invariant.
const INVARIANT_CYCLE_CAP: usize = 20_000;

/// A bijection of `{1..n}`; stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// From 0-based images.
    pub fn from_images0(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::params(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self(images))
    }

    /// From 1-based images: `images[v-1] = π(v)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        Self::from_images0(images.iter().map(|&v| v.wrapping_sub(1)).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Self(v)
    }

    /// All `n!` permutations in lexicographic order of image sequences.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n)
                .rev()
                .find(|&j| cur[j] > cur[i - 1])
                .expect("pivot exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn image0(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `π(v)` for 1-based `v`.
    pub fn image(&self, v: usize) -> usize {
        self.0[v - 1] + 1
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Self(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// One-line cycle notation over 1-based labels, fixed points omitted.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            out.push('(');
            let mut v = start;
            let mut first = true;
            while !seen[v] {
                seen[v] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(v + 1).to_string());
                first = false;
                v = self.0[v];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self.cycle_notation())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct VertexInvariant {
    out_degree: u32,
    in_degree: u32,
    has_loop: bool,
    shortest_cycle: Option<usize>,
    cycle_lengths: LengthSet,
}

fn vertex_invariants(d: &Digraph, with_cycles: bool) -> Vec<VertexInvariant> {
    let pred = d.predecessors();
    let shortest = d.shortest_cycles_through();
    let lengths = if with_cycles {
        cycle_profile(d, INVARIANT_CYCLE_CAP)
            .ok()
            .filter(|p| !p.cap_hit)
            .map(|p| p.per_vertex)
    } else {
        None
    };
    (0..d.order())
        .map(|v| VertexInvariant {
            out_degree: d.succ(v).count_ones(),
            in_degree: pred[v].count_ones(),
            has_loop: d.succ(v) >> v & 1 == 1,
            shortest_cycle: shortest[v],
            cycle_lengths: lengths.as_ref().map_or(LengthSet::default(), |l| l[v]),
        })
        .collect()
}

fn check_cap(d: &Digraph, cap: usize) -> Result<()> {
    if d.order() > cap {
        Err(Error::OrderCapExceeded {
            order: d.order(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// Returns a witness `π` with `b = relabel(a, π)` when the digraphs are
/// isomorphic.
pub fn are_isomorphic(a: &Digraph, b: &Digraph) -> Result<Option<Permutation>> {
    check_cap(a, ISO_ORDER_CAP)?;
    check_cap(b, ISO_ORDER_CAP)?;
    if a.order() != b.order() || a.arc_count() != b.arc_count() {
        return Ok(None);
    }
    let (mut ia, mut ib) = (vertex_invariants(a, false), vertex_invariants(b, false));
    if !same_multiset(&ia, &ib) {
        return Ok(None);
    }
    // cycle-length sets only when both enumerations finish
    let (ca, cb) = (vertex_invariants(a, true), vertex_invariants(b, true));
    let complete = |inv: &[VertexInvariant]| inv.iter().any(|x| !x.cycle_lengths.is_empty());
    if complete(&ca) && complete(&cb) {
        if !same_multiset(&ca, &cb) {
            return Ok(None);
        }
        (ia, ib) = (ca, cb);
    }
    Ok(Matcher::new(a, b, &ia, &ib).run().map(Permutation))
}

fn same_multiset(x: &[VertexInvariant], y: &[VertexInvariant]) -> bool {
    let (mut x, mut y) = (x.to_vec(), y.to_vec());
    x.sort();
    y.sort();
    x == y
}

struct Matcher<'a> {
    a: &'a Digraph,
    b: &'a Digraph,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: u64,
}

impl<'a> Matcher<'a> {
    fn new(a: &'a Digraph, b: &'a Digraph, ia: &[VertexInvariant], ib: &[VertexInvariant]) -> Self {
        let n = a.order();
        let class_of =
            |x: &VertexInvariant| -> Vec<usize> { (0..n).filter(|&w| ib[w] == *x).collect() };
        let classes: Vec<Vec<usize>> = ia.iter().map(class_of).collect();

        // most constrained first, then stay adjacent to what is placed
        let pred = a.predecessors();
        let mut placed = 0u64;
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .min_by_key(|&v| {
                    let links = ((a.succ(v) | pred[v]) & placed).count_ones();
                    (std::cmp::Reverse(links), classes[v].len(), v)
                })
                .expect("unplaced vertex");
            placed |= 1 << next;
            order.push(next);
        }
        let candidates = order.iter().map(|&v| classes[v].clone()).collect();
        Self {
            a,
            b,
            order,
            candidates,
            map: vec![usize::MAX; n],
            used: 0,
        }
    }

    fn consistent(&self, depth: usize, x: usize, y: usize) -> bool {
        self.order[..depth].iter().all(|&p| {
            let q = self.map[p];
            (self.a.succ(x) >> p & 1) == (self.b.succ(y) >> q & 1)
                && (self.a.succ(p) >> x & 1) == (self.b.succ(q) >> y & 1)
        }) && (self.a.succ(x) >> x & 1) == (self.b.succ(y) >> y & 1)
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for ci in 0..self.candidates[depth].len() {
            let y = self.candidates[depth][ci];
            if self.used >> y & 1 == 1 || !self.consistent(depth, x, y) {
                continue;
            }
            self.map[x] = y;
            self.used |= 1 << y;
            if self.extend(depth + 1) {
                return true;
            }
            self.used &= !(1 << y);
            self.map[x] = usize::MAX;
        }
        false
    }

    fn run(mut self) -> Option<Vec<usize>> {
        self.extend(0).then_some(self.map)
    }
}

/// Smallest relabelled adjacency matrix found by the canonical search,
/// row-major, with column 0 as the most significant bit of each row word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    order: usize,
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `n*n` characters of `0`/`1`, row-major.
    pub fn bits(&self) -> String {
        let n = self.order;
        self.rows
            .iter()
            .flat_map(|&r| (0..n).map(move |j| if r >> (n - 1 - j) & 1 == 1 { '1' } else { '0' }))
            .collect()
    }

    /// The canonical representative itself.
    pub fn to_digraph(&self) -> Digraph {
        let n = self.order;
        let m = BoolMatrix::from_fn(n, |i, j| self.rows[i] >> (n - 1 - j) & 1 == 1)
            .expect("order was valid");
        Digraph::from_matrix(m)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.bits())
    }
}

pub fn canonical_form(d: &Digraph) -> Result<CanonicalForm> {
    check_cap(d, CANON_ORDER_CAP)?;
    let mut c = Canonizer::new(d);
    let root = c.refine(vec![(0..d.order()).collect()]);
    let mut prefix = Vec::new();
    c.search(root, &mut prefix);
    let (rows, _) = c.best.expect("at least one leaf");
    Ok(CanonicalForm {
        order: d.order(),
        rows,
    })
}

struct Canonizer {
    n: usize,
    succ: Vec<u64>,
    pred: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Canonizer {
    fn new(d: &Digraph) -> Self {
        let n = d.order();
        Self {
            n,
            succ: (0..n).map(|v| d.succ(v)).collect(),
            pred: d.predecessors(),
            best: None,
            automorphisms: Vec::new(),
        }
    }

    /// Splits cells by (loop, arc counts into and out of every cell) until
    /// stable. Sub-cells are ordered by signature, so the result does not
    /// depend on vertex labels.
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let masks: Vec<u64> = cells
                .iter()
                .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect();
            let signature = |v: usize| -> Vec<u32> {
                let mut sig = Vec::with_capacity(1 + 2 * masks.len());
                sig.push((self.succ[v] >> v & 1) as u32);
                for &m in &masks {
                    sig.push((self.succ[v] & m).count_ones());
                    sig.push((self.pred[v] & m).count_ones());
                }
                sig
            };
            let mut next = Vec::with_capacity(cells.len());
            let mut split = false;
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut tagged: Vec<(Vec<u32>, usize)> =
                    cell.iter().map(|&v| (signature(v), v)).collect();
                tagged.sort();
                let mut start = 0;
                for i in 1..=tagged.len() {
                    if i == tagged.len() || tagged[i].0 != tagged[start].0 {
                        next.push(tagged[start..i].iter().map(|t| t.1).collect());
                        start = i;
                    }
                }
                split |=
                    !next.is_empty() && tagged.first().map(|t| &t.0) != tagged.last().map(|t| &t.0);
            }
            cells = next;
            if !split {
                return cells;
            }
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.n;
        let mut label = vec![0usize; n];
        for (pos, cell) in cells.iter().enumerate() {
            label[cell[0]] = pos;
        }
        let mut rows = vec![0u64; n];
        for u in 0..n {
            rows[label[u]] = Bits(self.succ[u]).fold(0, |acc, w| acc | 1 << (n - 1 - label[w]));
        }
        match &self.best {
            None => self.best = Some((rows, label)),
            Some((best_rows, best_label)) => match rows.cmp(best_rows) {
                Ordering::Less => self.best = Some((rows, label)),
                Ordering::Equal => {
                    // best_label^{-1} ∘ label is an automorphism
                    let mut inv = vec![0; n];
                    for (v, &l) in best_label.iter().enumerate() {
                        inv[l] = v;
                    }
                    let gamma: Vec<usize> = label.iter().map(|&l| inv[l]).collect();
                    if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                        self.automorphisms.push(gamma);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }

    fn same_orbit(&self, u: usize, v: usize, prefix: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.automorphisms {
            if prefix.iter().any(|&x| gamma[x] != x) {
                continue;
            }
            for (x, &y) in gamma.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        find(&mut parent, u) == find(&mut parent, v)
    }

    fn search(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&u| self.same_orbit(u, v, prefix)) {
                continue;
            }
            tried.push(v);
            let mut split = cells.clone();
            let rest: Vec<usize> = split[target].iter().copied().filter(|&w| w != v).collect();
            split[target] = vec![v];
            split.insert(target + 1, rest);
            let refined = self.refine(split);
            prefix.push(v);
            self.search(refined, prefix);
            prefix.pop();
        }
    }
}

/// Index of the first member of `family` isomorphic to `d`.
pub fn classify_against<I>(d: &Digraph, family: I) -> Result<Option<usize>>
where
    I: IntoIterator,
    I::Item: Borrow<Digraph>,
{
    for (i, member) in family.into_iter().enumerate() {
        if are_isomorphic(d, member.borrow())?.is_some() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Number of vertex permutations fixing `d`, by brute force (`n ≤ 8`).
pub fn automorphism_count(d: &Digraph) -> Result<usize> {
    if d.order() > 8 {
        return Err(Error::OrderCapExceeded {
            order: d.order(),
            cap: 8,
        });
    }
    let mut count = 0;
    for p in Permutation::all(d.order()) {
        if d.relabel(&p)? == *d {
            count += 1;
        }
    }
    Ok(count)
}
