//! Integer matrices and fraction-free elimination over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense row-major integer matrix. Used for adjacency blocks and polynomial
/// expressions in them, where entries stay small.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// Product with overflow detection.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = d.checked_add(a.checked_mul(b)?)?;
                }
            }
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Divides every entry by the gcd of all entries (no-op for zero).
    pub fn remove_content(&mut self) {
        let g = self.data.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g > 1 {
            for x in &mut self.data {
                *x /= g;
            }
        }
    }

    pub fn to_bigint_vec(&self) -> Vec<BigInt> {
        self.data.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// `self·s1 + other·s2` elementwise.
    pub fn combine(&self, s1: i64, other: &IntMatrix, s2: i64) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a * s1 + b * s2)
                .collect(),
        }
    }

    /// `self + c·I`.
    pub fn add_identity(&self, c: i64) -> IntMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.data[i * self.cols + i] += c;
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| BigInt::from(self.get(i, j))).collect())
            .collect();
        bareiss_rank(rows)
    }
}

/// Rank over `Q` of an integer matrix by Bareiss fraction-free elimination.
/// Every intermediate entry is a minor of the input, so exact division by the
/// previous pivot never leaves a remainder.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in bottom.iter_mut() {
            let factor = row[col].clone();
            for c in col..cols {
                let v = (&pivot * &row[c] - &factor * &pivot_row[c]) / &prev;
                row[c] = v;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Row echelon basis over `Q`, stored as primitive integer rows.
///
/// Rows are kept reduced against all earlier pivots, so a candidate vector is
/// reduced by a single pass in insertion order.
#[derive(Clone, Debug, Default)]
pub struct IntEchelon {
    len: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IntEchelon {
    pub fn new(len: usize) -> Self {
        IntEchelon {
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Residual of `v` after elimination against the basis, made primitive.
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (pivot_col, row) in &self.rows {
            let x = &v[*pivot_col];
            if x.is_zero() {
                continue;
            }
            let p = &row[*pivot_col];
            let g = x.gcd(p);
            let scale_v = p / &g;
            let scale_r = x / &g;
            for (vi, ri) in v.iter_mut().zip(row) {
                if ri.is_zero() {
                    if !vi.is_zero() {
                        *vi *= &scale_v;
                    }
                } else {
                    *vi = &*vi * &scale_v - ri * &scale_r;
                }
            }
            make_primitive(&mut v);
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Inserts `v` if it is independent of the current rows.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(col) => {
                self.rows.push((col, r));
                true
            }
            None => false,
        }
    }
}

/// Divides out the content and fixes a positive leading entry.
pub fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g == BigInt::from(1) {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if lead_negative {
        g = -g;
    }
    if g != BigInt::from(1) {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x / &g;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(IntMatrix::identity(5).rank(), 5);
        assert_eq!(IntMatrix::from_fn(4, 4, |_, _| 1).rank(), 1);
        let c4 = IntMatrix::from_fn(4, 4, |i, j| ((i + 1) % 4 == j || (j + 1) % 4 == i) as i64);
        assert_eq!(c4.rank(), 2);
        assert_eq!(IntMatrix::zeros(3, 7).rank(), 0);
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = IntEchelon::new(3);
        assert!(e.insert(big(&[2, 4, 6])));
        assert!(!e.insert(big(&[-1, -2, -3])));
        assert!(e.insert(big(&[0, 1, 1])));
        assert!(!e.insert(big(&[5, 7, 12])));
        assert!(e.contains(&big(&[1, 3, 4])));
        assert!(e.insert(big(&[0, 0, 9])));
        assert_eq!(e.rank(), 3);
        assert!(!e.insert(big(&[3, -8, 11])));
    }
}
