//! Exact dense linear algebra over Q.

use super::rational::{self, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Commutative ring operations needed by the generic determinant and
/// Pfaffian routines. Implemented for `Rational` and `Polynomial`.
pub trait Ring:
    Clone + Zero + One + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Determinant by Laplace expansion along rows, memoized over the set of
/// consumed columns. Division-free, so it works over any commutative ring;
/// cost is `k * 2^k` ring operations for a `k × k` matrix.
pub fn det_laplace<T: Ring>(m: &[Vec<T>]) -> T {
    let k = m.len();
    assert!(m.iter().all(|r| r.len() == k), "determinant of a non-square matrix");
    if k == 0 {
        return T::one();
    }
    assert!(k < 24, "Laplace expansion limited to small matrices");
    // level[mask] = determinant of rows [k - popcount(mask), k) restricted to columns in mask
    let full = (1usize << k) - 1;
    let mut level: std::collections::HashMap<usize, T> = std::collections::HashMap::new();
    level.insert(0, T::one());
    for r in (0..k).rev() {
        let mut next = std::collections::HashMap::new();
        for (mask, val) in &level {
            if val.is_zero() {
                continue;
            }
            // add one column c to the mask; row r takes column c
            for c in 0..k {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let entry = &m[r][c];
                if entry.is_zero() {
                    continue;
                }
                let new_mask = mask | (1 << c);
                // sign: position of c among columns of new_mask
                let pos = (new_mask & ((1 << c) - 1)).count_ones();
                let mut term = entry.clone() * val.clone();
                if pos % 2 == 1 {
                    term = -term;
                }
                let slot = next.entry(new_mask).or_insert_with(T::zero);
                *slot = slot.clone() + term;
            }
        }
        level = next;
    }
    level.remove(&full).unwrap_or_else(T::zero)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// First nonzero entry in the pivot column.
    FirstNonzero,
    /// Nonzero entry of smallest absolute value in the pivot column.
    SmallestMagnitude,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Rank and a basis of the right kernel `{v : M v = 0}`.
#[derive(Clone, Debug)]
pub struct KernelResult {
    pub rank: usize,
    pub kernel: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; an empty list gives a `0 × cols` matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        RationalMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rational::rat(v)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form by rational Gauss–Jordan elimination,
    /// pivoting on the first nonzero entry of each column. Returns the
    /// reduced matrix and the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m: Vec<Vec<Rational>> = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for v in m[r].iter_mut().skip(c) {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for j in c..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &f * &pivot_row[j];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Self::from_rows(m, self.cols), pivots)
    }

    pub fn rank_and_kernel(&self) -> KernelResult {
        let (red, pivots) = self.rref();
        let rank = pivots.len();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut kernel = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                let e = red.get(r, free);
                if !e.is_zero() {
                    v[pc] = -e.clone();
                }
            }
            kernel.push(v);
        }
        KernelResult { rank, kernel }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Scales every row by the lcm of its denominators.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                row.iter().map(|r| r.numer() * (&l / r.denom())).collect()
            })
            .collect()
    }

    /// Rank by Bareiss fraction-free elimination on the row-integerized
    /// matrix. Independent of [`RationalMatrix::rref`].
    pub fn rank_bareiss(&self, rule: PivotRule) -> usize {
        let mut m = self.integer_rows();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let candidates = (r..self.rows).filter(|&i| !m[i][c].is_zero());
            let p = match rule {
                PivotRule::FirstNonzero => candidates.min(),
                PivotRule::SmallestMagnitude => candidates.min_by_key(|&i| m[i][c].abs()),
            };
            let Some(p) = p else { continue };
            m.swap(r, p);
            for i in r + 1..self.rows {
                let lead = m[i][c].clone();
                for j in c + 1..self.cols {
                    let v = (&m[r][c] * &m[i][j] - &lead * &m[r][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            r += 1;
        }
        r
    }

    /// Exact determinant by rational elimination.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.to_rows();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            let inv = m[c][c].recip();
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let v = &m[i][j] - &f * &m[c][j];
                    m[i][j] = v;
                }
            }
        }
        det
    }
}

/// Rank of the span of a list of vectors of common length `dim`.
pub fn span_rank(vectors: &[Vec<Rational>], dim: usize) -> usize {
    RationalMatrix::from_rows(vectors.to_vec(), dim).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn rank_one_kernel() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let k = m.rank_and_kernel();
        assert_eq!(k.rank, 1);
        assert_eq!(k.kernel, vec![vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn identity_full_rank() {
        let k = RationalMatrix::identity(3).rank_and_kernel();
        assert_eq!(k.rank, 3);
        assert!(k.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_kernel() {
        let k = RationalMatrix::zeros(2, 5).rank_and_kernel();
        assert_eq!(k.rank, 0);
        assert_eq!(k.kernel.len(), 5);
    }

    #[test]
    fn laplace_matches_elimination() {
        let m = RationalMatrix::from_i64(&[&[2, -1, 0, 3], &[1, 4, -2, 0], &[0, 5, 1, 1], &[7, 0, 2, -3]]);
        let rows = m.to_rows();
        assert_eq!(det_laplace(&rows), m.determinant());
        assert_eq!(det_laplace::<Rational>(&[]), rat(1));
    }

    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, 1i64..4), r * c).prop_map(move |v| {
                let rows = v
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&(a, b)| crate::algebra::rational::ratio(a, b)).collect())
                    .collect();
                RationalMatrix::from_rows(rows, c)
            })
        })
    }

    proptest! {
        #[test]
        fn pivoting_strategies_agree(m in small_matrix()) {
            let k = m.rank_and_kernel();
            prop_assert_eq!(k.rank, m.rank_bareiss(PivotRule::FirstNonzero));
            prop_assert_eq!(k.rank, m.rank_bareiss(PivotRule::SmallestMagnitude));
            prop_assert_eq!(k.rank + k.kernel.len(), m.cols());
            for v in &k.kernel {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(span_rank(&k.kernel, m.cols()), k.kernel.len());
        }

        #[test]
        fn transpose_preserves_rank(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
