//! Pfaffians of skew-symmetric matrices over a commutative ring.

use crate::algebra::{Polynomial, Ring, Vars};
use crate::combinat::{matchings_of, CombinatError, EvenSubset};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PfaffianError {
    #[error("pfaffian of an odd-sized ({0}×{0}) matrix")]
    OddSize(usize),
    #[error("index set {subset:?} not contained in [1, {n}]")]
    OutOfRange { subset: Vec<usize>, n: usize },
    #[error(transparent)]
    Subset(#[from] CombinatError),
}

/// Skew-symmetric `n × n` matrix stored by its strict upper triangle.
/// Rows and columns are labelled `1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<T = Polynomial> {
    n: usize,
    upper: Vec<T>,
}

impl<T: Ring> SkewMatrix<T> {
    /// Builds the matrix from `entry(i, j)` for `1 <= i < j <= n`.
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> T) -> Self {
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                upper.push(entry(i, j));
            }
        }
        SkewMatrix { n, upper }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j <= self.n);
        let before: usize = (1..i).map(|a| self.n - a).sum();
        before + (j - i - 1)
    }

    /// Entry `A_{ij}`; `A_{ji} = -A_{ij}` and the diagonal is zero.
    pub fn entry(&self, i: usize, j: usize) -> T {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper[self.slot(i, j)].clone(),
            Greater => -self.upper[self.slot(j, i)].clone(),
            Equal => T::zero(),
        }
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SkewMatrix<U> {
        SkewMatrix {
            n: self.n,
            upper: self.upper.iter().map(f).collect(),
        }
    }

    /// Dense form, 0-based.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// `D^T A D` for a diagonal `D`.
    pub fn congruence_diag(&self, d: &[T]) -> Self {
        assert_eq!(d.len(), self.n);
        SkewMatrix::from_fn(self.n, |i, j| d[i - 1].clone() * self.entry(i, j) * d[j - 1].clone())
    }
}

fn expand_matchings<T: Ring>(a: &SkewMatrix<T>, idx: &[usize]) -> T {
    let mut total = T::zero();
    for m in matchings_of(idx) {
        let mut term = T::one();
        for &(i, j) in &m.pairs {
            term = term * a.entry(i, j);
            if term.is_zero() {
                break;
            }
        }
        if term.is_zero() {
            continue;
        }
        total = if m.sign > 0 { total + term } else { total - term };
    }
    total
}

/// Pfaffian as the signed sum over perfect matchings. The empty matrix has
/// Pfaffian 1.
pub fn pfaffian<T: Ring>(a: &SkewMatrix<T>) -> Result<T, PfaffianError> {
    if !a.n.is_multiple_of(2) {
        return Err(PfaffianError::OddSize(a.n));
    }
    let idx: Vec<usize> = (1..=a.n).collect();
    Ok(expand_matchings(a, &idx))
}

/// Pfaffian of the principal submatrix on `b`.
pub fn sub_pfaffian<T: Ring>(a: &SkewMatrix<T>, b: &EvenSubset) -> Result<T, PfaffianError> {
    if b.elems().iter().any(|&e| e > a.n) {
        return Err(PfaffianError::OutOfRange {
            subset: b.elems().to_vec(),
            n: a.n,
        });
    }
    Ok(expand_matchings(a, b.elems()))
}

/// Every even sub-Pfaffian, by expansion along the first row with a table
/// keyed by subset bitmask: `Pf(B) = sum_k (-1)^(k-1) A_{b1,bk} Pf(B \ {b1,bk})`.
pub fn all_sub_pfaffians<T: Ring>(a: &SkewMatrix<T>) -> HashMap<u64, T> {
    let n = a.n;
    assert!(n < 64);
    let mut table: HashMap<u64, T> = HashMap::new();
    table.insert(0, T::one());
    let mut masks: Vec<u64> = (1u64..1 << n).filter(|m| m.count_ones() % 2 == 0).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let elems: Vec<usize> = (1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
        let b1 = elems[0];
        let mut total = T::zero();
        for (k, &bk) in elems.iter().enumerate().skip(1) {
            let rest = mask & !(1 << (b1 - 1)) & !(1 << (bk - 1));
            let sub = &table[&rest];
            if sub.is_zero() {
                continue;
            }
            let term = a.entry(b1, bk) * sub.clone();
            total = if (k - 1) % 2 == 0 { total + term } else { total - term };
        }
        table.insert(mask, total);
    }
    table
}

/// The generic skew matrix with entries `z_{ij}`.
pub fn generic_skew(vars: &Vars) -> SkewMatrix<Polynomial> {
    SkewMatrix::from_fn(vars.n(), |i, j| vars.poly(vars.z(i, j)))
}
