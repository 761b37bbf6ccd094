//! Square (0,1) matrices under Boolean arithmetic.
//!
//! Each row is a single `u64` bit set: bit `j` of row `i` is the entry
//! `a_{ij}`. That caps the order at 64, which is far beyond anything the
//! exhaustive or exponent searches can reach anyway.

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 64;

pub(crate) type Rows = SmallVec<[u64; 8]>;

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if (MIN_ORDER..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidOrder(n))
    }
}

/// Iterator over the set bit positions of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    order: usize,
    rows: Rows,
}

impl BoolMatrix {
    pub fn zeros(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self {
            order,
            rows: SmallVec::from_elem(0, order),
        })
    }

    pub fn identity(order: usize) -> Result<Self> {
        let mut m = Self::zeros(order)?;
        for (i, row) in m.rows.iter_mut().enumerate() {
            *row = 1 << i;
        }
        Ok(m)
    }

    pub fn all_ones(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self {
            order,
            rows: SmallVec::from_elem(full_mask(order), order),
        })
    }

    /// Builds a matrix from row bit sets. Bits at positions `>= order` are
    /// rejected rather than masked.
    pub fn from_rows(order: usize, rows: &[u64]) -> Result<Self> {
        check_order(order)?;
        if rows.len() != order {
            return Err(Error::DimensionMismatch {
                left: order,
                right: rows.len(),
            });
        }
        let mask = full_mask(order);
        if let Some(i) = rows.iter().position(|r| r & !mask != 0) {
            return Err(Error::params(format!(
                "row {} has bits set beyond column {order}",
                i + 1
            )));
        }
        Ok(Self {
            order,
            rows: SmallVec::from_slice(rows),
        })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut m = Self::zeros(order)?;
        for i in 0..order {
            for j in 0..order {
                if f(i, j) {
                    m.rows[i] |= 1 << j;
                }
            }
        }
        Ok(m)
    }

    /// Unpacks the low `order * order` bits of `bits` in row-major order.
    /// Used by the exhaustive enumerators (order ≤ 8).
    pub fn from_index(order: usize, bits: u64) -> Result<Self> {
        if order * order > 64 {
            return Err(Error::OrderCapExceeded { order, cap: 8 });
        }
        check_order(order)?;
        let mask = full_mask(order);
        let rows = (0..order)
            .map(|i| (bits >> (i * order)) & mask)
            .collect::<Rows>();
        Ok(Self { order, rows })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Entry `(i, j)`, 0-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.order && j < self.order, "entry out of range");
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn count_ones(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn multiply(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &BoolMatrix) -> BoolMatrix {
        let rows = self
            .rows
            .iter()
            .map(|&r| Bits(r).fold(0u64, |acc, k| acc | other.rows[k]))
            .collect();
        BoolMatrix {
            order: self.order,
            rows,
        }
    }

    /// `A^k` by repeated squaring; `A^0` is the identity.
    pub fn power(&self, mut k: u64) -> BoolMatrix {
        let mut result = Self::identity(self.order).expect("order already validated");
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    pub fn is_all_positive(&self) -> bool {
        let mask = full_mask(self.order);
        self.rows.iter().all(|&r| r == mask)
    }

    /// Entrywise `self <= other`.
    pub fn is_dominated_by(&self, other: &BoolMatrix) -> bool {
        self.order == other.order && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// Entrywise OR.
    pub fn union(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(BoolMatrix {
            order: self.order,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a | b)
                .collect(),
        })
    }

    /// First zero entry in row-major order, 0-based.
    pub fn first_zero(&self) -> Option<(usize, usize)> {
        let mask = full_mask(self.order);
        self.rows.iter().enumerate().find_map(|(i, &r)| {
            let missing = !r & mask;
            (missing != 0).then(|| (i, missing.trailing_zeros() as usize))
        })
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMatrix(")?;
        for (i, _) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            for j in 0..self.order {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
        }
        write!(f, ")")
    }
}

/// The matrix text format: the order on the first line, then one line of
/// `0`/`1` characters per row, every line LF-terminated.
impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        let mut line = String::with_capacity(self.order);
        for i in 0..self.order {
            line.clear();
            for j in 0..self.order {
                line.push(if self.get(i, j) { '1' } else { '0' });
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for BoolMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text.split('\n').map(|l| l.trim_end());

        let header = lines.next().unwrap_or("");
        let order: usize = header
            .trim_start()
            .parse()
            .map_err(|_| perr(1, format!("expected a decimal order, found {header:?}")))?;
        if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
            return Err(perr(
                1,
                format!("order {order} outside {MIN_ORDER}..={MAX_ORDER}"),
            ));
        }

        let mut rows: Rows = SmallVec::with_capacity(order);
        for i in 0..order {
            let lineno = i + 2;
            let line = lines
                .next()
                .ok_or_else(|| perr(lineno, format!("expected {order} rows, found {i}")))?;
            let len = line.chars().count();
            if len != order {
                return Err(perr(
                    lineno,
                    format!("row has length {len}, expected {order}"),
                ));
            }
            let mut bits = 0u64;
            for (j, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => bits |= 1 << j,
                    other => {
                        return Err(perr(
                            lineno,
                            format!("unexpected character {other:?} in column {}", j + 1),
                        ))
                    }
                }
            }
            rows.push(bits);
        }

        for (k, rest) in lines.enumerate() {
            if !rest.is_empty() {
                return Err(perr(
                    order + 2 + k,
                    "unexpected content after the last row".to_string(),
                ));
            }
        }
        Ok(BoolMatrix { order, rows })
    }
}
