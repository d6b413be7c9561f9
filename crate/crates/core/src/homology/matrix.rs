use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::snf::{smith, SmithForm};

/// Sparse integer matrix; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                m.add(i, j, BigInt::from(*x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    /// Adds `x` to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, x: BigInt) {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of range");
        if x.is_zero() {
            return;
        }
        let e = self.entries.entry((i, j)).or_default();
        *e += x;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for ((i, j), x) in &self.entries {
            d[*i][*j] = x.clone();
        }
        d
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut by_row: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for ((k, j), x) in &other.entries {
            by_row.entry(*k).or_default().push((*j, x));
        }
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for ((i, k), x) in &self.entries {
            for (j, y) in by_row.get(k).into_iter().flatten() {
                out.add(*i, *j, x * *y);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn smith(&self) -> SmithForm {
        smith(self.to_dense(), self.rows, self.cols, true)
    }

    /// Invariant factors only, without the transforms.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        smith(self.to_dense(), self.rows, self.cols, false).diagonal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_stored_zeros() {
        let mut m = IntegerMatrix::zeros(2, 2);
        m.add(0, 1, BigInt::from(3));
        m.add(0, 1, BigInt::from(-3));
        assert_eq!(m.nonzeros(), 0);
        assert!(m.is_zero());
    }

    #[test]
    fn product_and_factors() {
        let a = IntegerMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        let sq = a.mul(&a);
        assert_eq!(sq, IntegerMatrix::from_dense(&[vec![4, 0], vec![0, 9]]));
        assert_eq!(a.invariant_factors(), [BigInt::from(1), BigInt::from(6)]);
        assert!(IntegerMatrix::zeros(3, 2).invariant_factors().is_empty());
    }
}
