//! Integer weights, partitions, the staircase shift, and the sorting data that
//! Borel–Weil–Bott needs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A GL(n) weight: a fixed-length sequence of integers.
///
/// Serializes as a plain JSON array, e.g. `[6,5,4,3,2,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntegerWeight(Vec<i64>);

impl IntegerWeight {
    pub fn new(entries: impl Into<Vec<i64>>) -> Self {
        IntegerWeight(entries.into())
    }

    /// Builds a weight and checks that it is non-increasing.
    pub fn dominant(entries: impl Into<Vec<i64>>) -> Result<Self> {
        let w = IntegerWeight(entries.into());
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.0));
        }
        Ok(w)
    }

    pub fn zero(len: usize) -> Self {
        IntegerWeight(vec![0; len])
    }

    pub fn constant(len: usize, value: i64) -> Self {
        IntegerWeight(vec![value; len])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Entrywise sum. Panics if the lengths differ.
    pub fn add(&self, other: &IntegerWeight) -> IntegerWeight {
        assert_eq!(self.len(), other.len(), "weight length mismatch");
        IntegerWeight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntegerWeight) -> IntegerWeight {
        assert_eq!(self.len(), other.len(), "weight length mismatch");
        IntegerWeight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Adds `t` to every entry (a determinant twist).
    pub fn shift(&self, t: i64) -> IntegerWeight {
        IntegerWeight(self.0.iter().map(|a| a + t).collect())
    }

    /// The dual weight: negate and reverse. Maps the highest weight of a
    /// representation to the highest weight of its dual.
    pub fn dual(&self) -> IntegerWeight {
        IntegerWeight(self.0.iter().rev().map(|a| -a).collect())
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &IntegerWeight) -> IntegerWeight {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        IntegerWeight(v)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }
}

impl From<Vec<i64>> for IntegerWeight {
    fn from(v: Vec<i64>) -> Self {
        IntegerWeight(v)
    }
}

impl fmt::Display for IntegerWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A partition: weakly decreasing positive parts. Trailing zeros are dropped
/// on construction so `(2,1,0)` and `(2,1)` compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(parts.iter().map(|&p| p as i64).collect()));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-indexed), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits_box(&self, rows: usize, cols: usize) -> bool {
        self.length() <= rows && self.part(0) as usize <= cols
    }

    /// The complement inside the `rows x cols` box, read backwards.
    pub fn complement(&self, rows: usize, cols: usize) -> Partition {
        let parts: Vec<u32> = (0..rows)
            .rev()
            .map(|i| cols as u32 - self.part(i))
            .collect();
        Partition::new(parts).expect("complement of a partition is a partition")
    }

    /// Pads to a weight of the given length.
    pub fn to_weight(&self, len: usize) -> IntegerWeight {
        IntegerWeight((0..len).map(|i| self.part(i) as i64).collect())
    }

    /// Every partition inside the `rows x cols` box, smallest size first.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn rec(rows: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if prefix.len() == rows {
                out.push(Partition::new(prefix.clone()).unwrap());
                return;
            }
            for p in 0..=max {
                prefix.push(p);
                rec(rows, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols as u32, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Result of sorting a shifted weight into strictly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SortOutcome {
    NotRegular,
    Regular { sorted: IntegerWeight, length: usize },
}

impl SortOutcome {
    pub fn is_regular(&self) -> bool {
        matches!(self, SortOutcome::Regular { .. })
    }

    /// Length of the sorting permutation, or `None` for a repeated entry.
    pub fn length(&self) -> Option<usize> {
        match self {
            SortOutcome::NotRegular => None,
            SortOutcome::Regular { length, .. } => Some(*length),
        }
    }
}

/// The staircase weight `(n, n-1, ..., 1)`.
pub fn rho(n: usize) -> IntegerWeight {
    IntegerWeight((1..=n as i64).rev().collect())
}

/// Sorts `w` into strictly decreasing order and counts inversions, i.e. the
/// number of adjacent transpositions in a minimal sorting word.
pub fn sort_regular(w: &IntegerWeight) -> SortOutcome {
    let e = w.entries();
    let mut length = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if e[i] == e[j] {
                return SortOutcome::NotRegular;
            }
            if e[i] < e[j] {
                length += 1;
            }
        }
    }
    let mut sorted = e.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    SortOutcome::Regular {
        sorted: IntegerWeight(sorted),
        length,
    }
}

/// Dimension of the irreducible GL(n) representation with highest weight
/// `lambda` (entries may be negative).
///
/// The running product over columns `j` is itself the dimension of the
/// GL(j) representation with highest weight `lambda[..j]`, so each division
/// by `(j-1)!` is exact.
pub fn weyl_dimension(lambda: &IntegerWeight) -> Result<u128> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.entries().to_vec()));
    }
    let n = lambda.len();
    let shifted: Vec<i128> = lambda
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &a)| a as i128 + (n - i) as i128)
        .collect();
    let mut dim: u128 = 1;
    let mut factorial: u128 = 1;
    for j in 1..n {
        factorial *= j as u128;
        for i in 0..j {
            let diff = (shifted[i] - shifted[j]) as u128;
            dim = dim.checked_mul(diff).ok_or(Error::Overflow("weyl_dimension"))?;
        }
        debug_assert_eq!(dim % factorial, 0);
        dim /= factorial;
    }
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> IntegerWeight {
        IntegerWeight::new(v.to_vec())
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(6), w(&[6, 5, 4, 3, 2, 1]));
        assert_eq!(rho(1), w(&[1]));
        assert_eq!(rho(3), w(&[3, 2, 1]));
    }

    #[test]
    fn sort_examples() {
        assert_eq!(
            sort_regular(&w(&[3, -1, 4, 2, 1, 0])),
            SortOutcome::Regular {
                sorted: w(&[4, 3, 2, 1, 0, -1]),
                length: 5
            }
        );
        assert_eq!(sort_regular(&w(&[7, 4, 4, 3, 2, 1])), SortOutcome::NotRegular);
        assert_eq!(sort_regular(&rho(6)).length(), Some(0));
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_dimension(&w(&[0, 0, 0, -1, -1, -1])).unwrap(), 20);
        assert_eq!(weyl_dimension(&w(&[1, 1, 1, 1, 1, 1])).unwrap(), 1);
        assert_eq!(weyl_dimension(&w(&[1, 0, 0, 0, -2, -2])).unwrap(), 560);
        assert_eq!(weyl_dimension(&w(&[0, -1, -1, -1, -1, -2])).unwrap(), 35);
    }

    #[test]
    fn weyl_rejects_non_dominant() {
        assert!(matches!(
            weyl_dimension(&w(&[0, 1])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn partition_normalizes_and_complements() {
        let p = Partition::new(vec![2, 1, 0]).unwrap();
        assert_eq!(p, Partition::new(vec![2, 1]).unwrap());
        assert_eq!(p.complement(2, 4), Partition::new(vec![3, 2]).unwrap());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::all_in_box(2, 4).len(), 15);
    }

    #[test]
    fn weight_json_is_plain_array() {
        assert_eq!(serde_json::to_string(&rho(6)).unwrap(), "[6,5,4,3,2,1]");
    }
}
