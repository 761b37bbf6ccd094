//! Seeded random primitive digraphs: a random Hamiltonian cycle plus
//! independent Bernoulli(p) arcs, redrawn until primitive.
//!
//! Instance `i` of seed `s` draws from its own ChaCha stream, so any
//! instance can be regenerated on its own and parallel generation gives the
//! same digraphs as sequential generation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Digraph;

/// Arc densities cycled through by instance index.
pub const DENSITIES: [f64; 3] = [0.05, 0.1, 0.2];

const MAX_ATTEMPTS: usize = 100_000;

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One Hamiltonian-cycle-plus-noise digraph of order `n`; may be imprimitive.
pub fn hamiltonian_plus_noise<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Digraph> {
    let mut d = Digraph::empty(n)?;
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    for k in 0..n {
        d.add_arc(order[k], order[(k + 1) % n])?;
    }
    for u in 1..=n {
        for v in 1..=n {
            if rng.gen_bool(p) {
                d.add_arc(u, v)?;
            }
        }
    }
    Ok(d)
}

/// A generated instance and the parameters that produced it.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    /// `random` or `pair`, naming the generator.
    pub kind: &'static str,
    pub index: u64,
    pub density: f64,
    pub digraph: Digraph,
}

impl RandomInstance {
    /// `<kind>#<index>:<hex rows>`, enough to rebuild the digraph.
    pub fn name(&self) -> String {
        let rows: Vec<String> = self
            .digraph
            .matrix()
            .rows()
            .iter()
            .map(|r| format!("{r:x}"))
            .collect();
        format!("{}#{:06}:{}", self.kind, self.index, rows.join("."))
    }
}

/// Instance `index` for `seed`: order uniform in `2..=n_max`.
pub fn random_primitive(n_max: usize, seed: u64, index: u64) -> Result<RandomInstance> {
    if !(2..=64).contains(&n_max) {
        return Err(Error::params(format!(
            "n_max must be in 2..=64, got {n_max}"
        )));
    }
    let mut rng = instance_rng(seed, index);
    let density = DENSITIES[(index % 3) as usize];
    let n = rng.gen_range(2..=n_max);
    for _ in 0..MAX_ATTEMPTS {
        let d = hamiltonian_plus_noise(n, density, &mut rng)?;
        if d.is_primitive() {
            return Ok(RandomInstance {
                kind: "random",
                index,
                density,
                digraph: d,
            });
        }
    }
    Err(Error::params(format!(
        "no primitive digraph of order {n} after {MAX_ATTEMPTS} draws"
    )))
}

/// Stream offset separating the cycle-pair generator from the Hamiltonian one.
const PAIR_STREAM: u64 = 1 << 63;

/// Two cycles of lengths `g < q ≤ n-1` sharing at least one vertex and
/// together covering all `n` vertices. Unlike the Hamiltonian generator this
/// reaches digraphs whose longest cycle is shorter than `n`; extra cycle
/// lengths can still appear where the cycles cross.
pub fn random_cycle_pair(n_max: usize, seed: u64, index: u64) -> Result<RandomInstance> {
    if !(4..=64).contains(&n_max) {
        return Err(Error::params(format!(
            "n_max must be in 4..=64, got {n_max}"
        )));
    }
    let mut rng = instance_rng(seed, PAIR_STREAM | index);
    let n = rng.gen_range(4..=n_max);
    for _ in 0..MAX_ATTEMPTS {
        // q > (n+1)/2 leaves room for a shared vertex with g < q
        let q = rng.gen_range(n.div_ceil(2) + 1..n);
        let shared = rng.gen_range(1..2 * q - n);
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rng);
        let (long, rest) = perm.split_at(q);
        let mut short: Vec<usize> = rest.to_vec();
        short.extend(long.choose_multiple(&mut rng, shared));
        short.shuffle(&mut rng);

        let mut d = Digraph::empty(n)?;
        for cyc in [long, &short[..]] {
            for k in 0..cyc.len() {
                d.add_arc(cyc[k], cyc[(k + 1) % cyc.len()])?;
            }
        }
        if d.is_primitive() {
            return Ok(RandomInstance {
                kind: "pair",
                index,
                density: 0.0,
                digraph: d,
            });
        }
    }
    Err(Error::params(format!(
        "no primitive cycle pair of order {n} after {MAX_ATTEMPTS} draws"
    )))
}
