//! Gcd helpers and the Frobenius number in its conductor form: the least
//! `m ≥ 0` such that every integer `k ≥ m` is a non-negative combination of
//! the generators. For a coprime pair this is `(s1 - 1)(s2 - 1)`, one more
//! than the classical "largest non-representable integer".

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Largest representability table we are willing to allocate.
const MAX_TABLE: u128 = 1 << 28;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A non-empty set of distinct positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet(BTreeSet<u64>);

impl GeneratorSet {
    pub fn new(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for v in values {
            if v == 0 {
                return Err(Error::ZeroGenerator);
            }
            if !set.insert(v) {
                return Err(Error::DuplicateGenerator(v));
            }
        }
        if set.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        Ok(Self(set))
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> u64 {
        *self.0.first().expect("non-empty")
    }

    pub fn max(&self) -> u64 {
        *self.0.last().expect("non-empty")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: u64) -> bool {
        self.0.contains(&v)
    }
}

pub fn gcd_set(g: &GeneratorSet) -> u64 {
    g.values().fold(0, gcd)
}

/// Representability of `0..=limit` as non-negative combinations.
pub fn representable_up_to(g: &GeneratorSet, limit: u64) -> Result<Vec<bool>> {
    let size = limit as u128 + 1;
    if size > MAX_TABLE {
        return Err(Error::GeneratorsTooLarge(size));
    }
    let mut rep = vec![false; size as usize];
    rep[0] = true;
    let gens: Vec<usize> = g.values().map(|v| v as usize).collect();
    for k in 1..rep.len() {
        rep[k] = gens.iter().any(|&s| s <= k && rep[k - s]);
    }
    Ok(rep)
}

/// The conductor `φ(s_1, …, s_λ)`, decided by a representability table up
/// to `(s_min - 1)·s_max + s_max`, which lies past any conductor of the set.
pub fn frobenius(g: &GeneratorSet) -> Result<u64> {
    let d = gcd_set(g);
    if d != 1 {
        return Err(Error::NotCoprime(d));
    }
    if g.min() == 1 {
        return Ok(0);
    }
    let limit = (g.min() as u128 - 1) * g.max() as u128 + g.max() as u128;
    if limit >= MAX_TABLE {
        return Err(Error::GeneratorsTooLarge(limit + 1));
    }
    let rep = representable_up_to(g, limit as u64)?;
    Ok(rep
        .iter()
        .rposition(|&r| !r)
        .map_or(0, |last_gap| last_gap as u64 + 1))
}

/// Convenience wrapper over a slice of cycle lengths or generators.
pub fn frobenius_of(values: &[u64]) -> Result<u64> {
    frobenius(&GeneratorSet::new(values.iter().copied())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> GeneratorSet {
        GeneratorSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_set(&set(&[3, 5])), 1);
        assert_eq!(gcd_set(&set(&[4, 6])), 2);
        assert_eq!(gcd_set(&set(&[7])), 7);
        assert_eq!(gcd(0, 9), 9);
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius(&set(&[3, 5])).unwrap(), 8);
        assert_eq!(frobenius(&set(&[1, 7])).unwrap(), 0);
        assert_eq!(frobenius(&set(&[1])).unwrap(), 0);
        assert_eq!(frobenius(&set(&[10, 3])).unwrap(), 18);
    }

    #[test]
    fn frobenius_triple_below_pair_bound() {
        // 4,6,9: representable from 12 on (gaps 1,2,3,5,7,11); pair bound φ(4,9)=24
        let m = frobenius(&set(&[4, 6, 9])).unwrap();
        assert_eq!(m, 12);
        assert!(m <= frobenius(&set(&[4, 9])).unwrap());
    }

    #[test]
    fn no_coprime_pair_still_works() {
        // 6,10,15 are pairwise non-coprime; classical Frobenius number is 29
        assert_eq!(frobenius(&set(&[6, 10, 15])).unwrap(), 30);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            GeneratorSet::new([]),
            Err(Error::EmptyGeneratorSet)
        ));
        assert!(matches!(
            GeneratorSet::new([0, 3]),
            Err(Error::ZeroGenerator)
        ));
        assert!(matches!(
            GeneratorSet::new([3, 3]),
            Err(Error::DuplicateGenerator(3))
        ));
        assert!(matches!(
            frobenius(&set(&[4, 6])),
            Err(Error::NotCoprime(2))
        ));
        assert!(matches!(
            frobenius(&set(&[u64::MAX - 1, u64::MAX])),
            Err(Error::GeneratorsTooLarge(_))
        ));
    }
}
