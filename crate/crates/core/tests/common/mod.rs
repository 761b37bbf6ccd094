//! Slow, obviously-correct reference implementations used to cross-check
//! the library. Everything here works on plain `Vec<Vec<bool>>` adjacency
//! and shares no code with the crate beyond reading arcs.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use primexp::Digraph;

pub type Adj = Vec<Vec<bool>>;

pub fn adj(d: &Digraph) -> Adj {
    let n = d.order();
    (1..=n)
        .map(|u| (1..=n).map(|v| d.has_arc(u, v).unwrap()).collect())
        .collect()
}

pub fn from_adj(a: &Adj) -> Digraph {
    let n = a.len();
    let mut d = Digraph::empty(n).unwrap();
    for (u, row) in a.iter().enumerate() {
        for (v, &on) in row.iter().enumerate() {
            if on {
                d.add_arc(u + 1, v + 1).unwrap();
            }
        }
    }
    d
}

/// Row-major bits of `idx` as an adjacency matrix.
pub fn adj_from_index(n: usize, idx: u64) -> Adj {
    (0..n)
        .map(|i| (0..n).map(|j| idx >> (i * n + j) & 1 == 1).collect())
        .collect()
}

/// Smallest `k` such that for every ordered pair there is a walk of exactly
/// `k` arcs, tracked as per-source sets of endpoints. `None` past the
/// Wielandt value `(n-1)^2 + 1`.
pub fn exponent(a: &Adj) -> Option<u64> {
    let n = a.len();
    let limit = (n - 1) * (n - 1) + 1;
    let mut layer: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| u == v).collect()).collect();
    for k in 1..=limit {
        layer = layer
            .iter()
            .map(|ends| {
                let mut next = vec![false; n];
                for (v, &on) in ends.iter().enumerate() {
                    if on {
                        for w in 0..n {
                            next[w] |= a[v][w];
                        }
                    }
                }
                next
            })
            .collect();
        if layer.iter().all(|ends| ends.iter().all(|&x| x)) {
            return Some(k as u64);
        }
    }
    None
}

/// Every simple cycle as its vertex list, found by depth-first search from
/// each vertex through larger-numbered vertices only.
pub fn simple_cycles(a: &Adj) -> Vec<Vec<usize>> {
    fn dfs(
        a: &Adj,
        start: usize,
        path: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        for w in 0..a.len() {
            if !a[v][w] {
                continue;
            }
            if w == start {
                out.push(path.clone());
            } else if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                dfs(a, start, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..a.len() {
        let mut on = vec![false; a.len()];
        on[s] = true;
        dfs(a, s, &mut vec![s], &mut on, &mut out);
    }
    out
}

pub fn cycle_lengths(a: &Adj) -> BTreeSet<usize> {
    simple_cycles(a).iter().map(|c| c.len()).collect()
}

pub fn girth(a: &Adj) -> Option<usize> {
    cycle_lengths(a).into_iter().next()
}

/// Shortest walk from `i` to `j` that touches a cycle of every length, by
/// expanding exact-length layers of (vertex, lengths met) states until the
/// target state shows up. Returns the full matrix of distances.
pub fn c_walk(a: &Adj) -> Vec<Vec<u32>> {
    let n = a.len();
    let lengths: Vec<usize> = cycle_lengths(a).into_iter().collect();
    let mut met = vec![0u32; n];
    for c in simple_cycles(a) {
        let bit = 1 << lengths.iter().position(|&l| l == c.len()).unwrap();
        for &v in &c {
            met[v] |= bit;
        }
    }
    let full = (1u32 << lengths.len()) - 1;
    let mut out = vec![vec![u32::MAX; n]; n];
    for i in 0..n {
        let mut layer: HashSet<(usize, u32)> = HashSet::from([(i, met[i])]);
        let mut found = 0;
        let mut len = 0;
        loop {
            for &(v, m) in &layer {
                if m == full && out[i][v] == u32::MAX {
                    out[i][v] = len;
                    found += 1;
                }
            }
            if found == n {
                break;
            }
            assert!(len < 4 * n as u32 * n as u32, "walk search ran away");
            let mut next = HashSet::new();
            for &(v, m) in &layer {
                for w in 0..n {
                    if a[v][w] {
                        next.insert((w, m | met[w]));
                    }
                }
            }
            layer = next;
            len += 1;
        }
    }
    out
}

/// Conductor of the numerical semigroup: least `m` with every integer
/// `≥ m` representable, found as the start of the first run of `min`
/// consecutive representable integers.
pub fn conductor(gens: &[u64]) -> u64 {
    let s = *gens.iter().min().unwrap();
    let mut rep = vec![true];
    let mut run = 0;
    let mut k = 0u64;
    loop {
        if k > 0 {
            let r = gens.iter().any(|&g| g <= k && rep[(k - g) as usize]);
            rep.push(r);
        }
        if rep[k as usize] {
            run += 1;
            if run == s {
                return k + 1 - s;
            }
        } else {
            run = 0;
        }
        k += 1;
    }
}

/// All permutations of `0..n` by Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut out = vec![p.clone()];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn relabel(a: &Adj, p: &[usize]) -> Adj {
    let n = a.len();
    let mut b = vec![vec![false; n]; n];
    for u in 0..n {
        for v in 0..n {
            b[p[u]][p[v]] = a[u][v];
        }
    }
    b
}

pub fn isomorphic(a: &Adj, b: &Adj) -> bool {
    a.len() == b.len() && permutations(a.len()).iter().any(|p| relabel(a, p) == *b)
}

pub fn automorphisms(a: &Adj) -> usize {
    permutations(a.len())
        .iter()
        .filter(|p| relabel(a, p) == *a)
        .count()
}

/// Standard `n`-cycle `v_n → … → v_1 → v_n` plus arcs, all 1-based.
pub fn cycle_plus(n: usize, extra: &[(usize, usize)]) -> Adj {
    let mut a = vec![vec![false; n]; n];
    for j in 2..=n {
        a[j - 1][j - 2] = true;
    }
    a[0][n - 1] = true;
    for &(u, v) in extra {
        a[u - 1][v - 1] = true;
    }
    a
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
