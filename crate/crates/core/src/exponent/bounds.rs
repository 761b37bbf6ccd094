//! Closed-form exponent bounds and predictions in terms of order `n`,
//! girth `g` and the other cycle parameters. Each evaluator checks its
//! parameter range and returns the formula value; none of them asserts
//! anything about real digraphs.

use crate::arithmetic::gcd;
use crate::error::{Error, Result};

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::params(msg()))
    }
}

/// `n + g(n-2)`, for `1 ≤ g ≤ n-1`.
pub fn lemma23_bound(n: usize, g: usize) -> Result<u64> {
    require(n >= 2 && (1..n).contains(&g), || {
        format!("need 1 <= g <= n-1, got n={n}, g={g}")
    })?;
    Ok((n + g * (n - 2)) as u64)
}

/// `⌊(n-2)^2 / 2⌋ + n`; applies to digraphs with at least three cycle lengths.
pub fn lemma25_bound(n: usize) -> Result<u64> {
    require(n >= 2, || format!("need n >= 2, got n={n}"))?;
    Ok(((n - 2) * (n - 2) / 2 + n) as u64)
}

/// `2n - g - 1 + (g-1)(q-1)` for cycle lengths exactly `{g, q}`.
pub fn lemma26_bound(n: usize, g: usize, q: usize) -> Result<u64> {
    require(g >= 1 && g <= q && q <= n, || {
        format!("need 1 <= g <= q <= n, got n={n}, g={g}, q={q}")
    })?;
    Ok((2 * n - g - 1 + (g - 1) * (q - 1)) as u64)
}

/// `2n - 2 + (g-1)(n-3)`, for `n ≥ 6` and `1 ≤ g ≤ n-2`.
pub fn lemma32_bound(n: usize, g: usize) -> Result<u64> {
    require(n >= 6 && g >= 1 && g + 2 <= n, || {
        format!("need n >= 6 and 1 <= g <= n-2, got n={n}, g={g}")
    })?;
    Ok((2 * n - 2 + (g - 1) * (n - 3)) as u64)
}

/// `(n-1)g + n - 2g`, for `n ≥ 2g` and `gcd(n, g) = 1`.
pub fn lemma34_bound(n: usize, g: usize) -> Result<u64> {
    require(g >= 1 && n >= 2 * g, || {
        format!("need n >= 2g, got n={n}, g={g}")
    })?;
    require(gcd(n as u64, g as u64) == 1, || {
        format!("need gcd(n, g) = 1, got n={n}, g={g}")
    })?;
    Ok(((n - 1) * g + n - 2 * g) as u64)
}

/// Predicted exponent `(n-2)g + 1 - r + n` of a chord digraph whose largest
/// chord index is `r`, with `1 ≤ r ≤ min(n-g+1, g)`.
pub fn formula_thm33(n: usize, g: usize, r: usize) -> Result<u64> {
    require(n >= 2 && (1..n).contains(&g), || {
        format!("need 1 <= g <= n-1, got n={n}, g={g}")
    })?;
    require(gcd(n as u64, g as u64) == 1, || {
        format!("need gcd(n, g) = 1, got n={n}, g={g}")
    })?;
    let t = (n - g + 1).min(g);
    require((1..=t).contains(&r), || {
        format!("need 1 <= r <= t = {t}, got r={r}")
    })?;
    Ok(((n - 2) * g + 1 + n - r) as u64)
}

/// Exponent window `(low, high]` with `low = 2n-2+(g-1)(n-3)` and
/// `high = n + g(n-2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExponentWindow {
    pub low_exclusive: u64,
    pub high_inclusive: u64,
}

impl ExponentWindow {
    pub fn contains(&self, w: u64) -> bool {
        w > self.low_exclusive && w <= self.high_inclusive
    }

    pub fn is_empty(&self) -> bool {
        self.low_exclusive >= self.high_inclusive
    }
}

pub fn thm36_range(n: usize, g: usize) -> Result<ExponentWindow> {
    require(n >= 3 && (1..n).contains(&g), || {
        format!("need n >= 3 and 1 <= g <= n-1, got n={n}, g={g}")
    })?;
    Ok(ExponentWindow {
        low_exclusive: (2 * n - 2 + (g - 1) * (n - 3)) as u64,
        high_inclusive: (n + g * (n - 2)) as u64,
    })
}

/// Chord index `z = (n-2)g + 1 + n - w` for an exponent `w` in the window.
pub fn z_of_w(n: usize, g: usize, w: u64) -> Result<usize> {
    let window = thm36_range(n, g)?;
    require(window.contains(w), || {
        format!(
            "w={w} outside ({}, {}]",
            window.low_exclusive, window.high_inclusive
        )
    })?;
    Ok(((n - 2) * g + 1 + n) - w as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(lemma23_bound(10, 3).unwrap(), 34);
        assert_eq!(lemma25_bound(10).unwrap(), 42);
        assert_eq!(lemma25_bound(4).unwrap(), 6);
        assert_eq!(lemma26_bound(10, 3, 10).unwrap(), 34);
        assert_eq!(lemma26_bound(4, 3, 4).unwrap(), 10);
        assert_eq!(lemma32_bound(10, 3).unwrap(), 32);
        assert_eq!(lemma32_bound(10, 7).unwrap(), 60);
        assert_eq!(lemma34_bound(10, 3).unwrap(), 31);
        assert_eq!(lemma34_bound(7, 3).unwrap(), 19);
        assert_eq!(formula_thm33(10, 3, 1).unwrap(), 34);
        assert_eq!(formula_thm33(10, 3, 2).unwrap(), 33);
        assert_eq!(formula_thm33(10, 3, 3).unwrap(), 32);
    }

    #[test]
    fn cross_formula_identities() {
        for n in 3..30 {
            // the girth n-1 bound reaches the Wielandt value
            assert_eq!(
                lemma23_bound(n, n - 1).unwrap(),
                ((n - 1) * (n - 1) + 1) as u64
            );
            assert_eq!(
                formula_thm33(n, n - 1, 2).unwrap(),
                ((n - 1) * (n - 1)) as u64
            );
            for g in 1..n {
                for q in g..=n {
                    let alt = (2 * n - 2) as i64 + (g as i64 - 1) * (q as i64 - 2);
                    assert_eq!(lemma26_bound(n, g, q).unwrap() as i64, alt);
                }
                assert_eq!(
                    lemma26_bound(n, g, n).unwrap(),
                    lemma23_bound(n, g).unwrap()
                );
                let top = lemma23_bound(n, g).unwrap();
                if thm36_range(n, g).unwrap().contains(top) {
                    assert_eq!(z_of_w(n, g, top).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn windows() {
        let w = thm36_range(10, 3).unwrap();
        assert_eq!((w.low_exclusive, w.high_inclusive), (32, 34));
        assert_eq!(z_of_w(10, 3, 34).unwrap(), 1);
        assert_eq!(z_of_w(10, 3, 33).unwrap(), 2);
        assert!(z_of_w(10, 3, 32).is_err());
        assert!(z_of_w(10, 3, 35).is_err());
        let w = thm36_range(10, 7).unwrap();
        assert_eq!((w.low_exclusive, w.high_inclusive), (60, 66));
        assert!(thm36_range(10, 1).unwrap().is_empty());
    }

    #[test]
    fn range_errors() {
        assert!(lemma23_bound(10, 10).is_err());
        assert!(lemma23_bound(10, 0).is_err());
        assert!(lemma26_bound(10, 5, 4).is_err());
        assert!(lemma26_bound(10, 3, 11).is_err());
        assert!(lemma32_bound(5, 2).is_err());
        assert!(lemma32_bound(10, 9).is_err());
        assert!(lemma34_bound(10, 6).is_err());
        assert!(lemma34_bound(9, 3).unwrap_err().to_string().contains("gcd"));
        assert!(formula_thm33(10, 4, 1).is_err());
        assert!(formula_thm33(10, 3, 4).is_err());
        assert!(formula_thm33(10, 3, 0).is_err());
    }
}
