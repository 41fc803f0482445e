use num_bigint::BigInt;

use super::integer::{bareiss_rank, IntMatrix};
use super::scalar::{denominator_lcm, AlgebraicScalar};
use crate::error::{Error, Result};

/// Dense matrix over one quadratic field `Q(√d)` (or float fallback).
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<AlgebraicScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![AlgebraicScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| AlgebraicScalar::from_int((i == j) as i64))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> AlgebraicScalar) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        ExactMatrix { rows, cols, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| AlgebraicScalar::from_int(m.get(i, j)))
    }

    pub fn diagonal(values: &[AlgebraicScalar]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                values[i].clone()
            } else {
                AlgebraicScalar::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraicScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: AlgebraicScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[AlgebraicScalar] {
        &self.data
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(AlgebraicScalar::is_exact)
    }

    /// Common radicand of the entries, or an error if two different
    /// quadratic fields are mixed.
    pub fn field(&self) -> Result<u64> {
        let mut d = 0;
        for x in &self.data {
            match (d, x.field()) {
                (_, 0) => {}
                (0, e) => d = e,
                (a, e) if a == e => {}
                (a, e) => {
                    return Err(Error::DimensionMismatch(format!(
                        "entries from Q(√{a}) and Q(√{e}) in one matrix"
                    )))
                }
            }
        }
        Ok(d)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(AlgebraicScalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> AlgebraicScalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn scale(&self, c: &AlgebraicScalar) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&AlgebraicScalar, &AlgebraicScalar) -> AlgebraicScalar) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    /// `self - c·I`.
    pub fn shift(&self, c: &AlgebraicScalar) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) - c;
            m.set(i, i, v);
        }
        m
    }

    /// Integer rows scaled from rational entries, if every entry is rational.
    pub(crate) fn integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row: Option<Vec<_>> = (0..self.cols).map(|j| self.get(i, j).as_rational()).collect();
            let row = row?;
            let l = num_rational::BigRational::from_integer(denominator_lcm(row.iter().copied()));
            out.push(row.iter().map(|q| (*q * &l).to_integer()).collect());
        }
        Some(out)
    }

    /// Rank over `Q(√d)`. Rational matrices go through fraction-free integer
    /// elimination; matrices with surd entries use field elimination.
    pub fn rank(&self) -> Result<usize> {
        if !self.is_exact() {
            return Err(Error::FloatMode("rank requires exact entries".into()));
        }
        self.field()?;
        if let Some(rows) = self.integer_rows() {
            return Ok(bareiss_rank(rows));
        }
        let mut e = FieldEchelon::new(self.cols);
        let mut r = 0;
        for i in 0..self.rows {
            if e.insert(self.data[i * self.cols..(i + 1) * self.cols].to_vec()) {
                r += 1;
            }
        }
        Ok(r)
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> Vec<AlgebraicScalar> {
        self.data.clone()
    }
}

/// Row echelon basis over `Q(√d)` with unit pivots.
#[derive(Clone, Debug)]
pub struct FieldEchelon {
    len: usize,
    rows: Vec<(usize, Vec<AlgebraicScalar>)>,
}

impl FieldEchelon {
    pub fn new(len: usize) -> Self {
        FieldEchelon { len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<AlgebraicScalar>) -> Vec<AlgebraicScalar> {
        for (col, row) in &self.rows {
            let x = v[*col].clone();
            if x.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *vi = &*vi - &(ri * &x);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[AlgebraicScalar]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        self.reduce(v.to_vec()).iter().all(AlgebraicScalar::is_zero)
    }

    pub fn insert(&mut self, v: Vec<AlgebraicScalar>) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(col) => {
                let inv = r[col].recip().expect("nonzero pivot");
                let r: Vec<_> = r.iter().map(|x| x * &inv).collect();
                self.rows.push((col, r));
                true
            }
            None => false,
        }
    }
}

/// Appends `m` to `basis` when it lies outside the span of `basis`
/// (matrices compared as flattened vectors). Returns whether it was added.
pub fn span_insert(basis: &mut Vec<ExactMatrix>, m: ExactMatrix) -> Result<bool> {
    if let Some(b) = basis.first() {
        if (b.rows, b.cols) != (m.rows, m.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix inserted into span of {}x{} matrices",
                m.rows, m.cols, b.rows, b.cols
            )));
        }
    }
    if !m.is_exact() || basis.iter().any(|b| !b.is_exact()) {
        return Err(Error::FloatMode("span_insert requires exact matrices".into()));
    }
    let mut e = FieldEchelon::new(m.rows * m.cols);
    for b in basis.iter() {
        e.insert(b.flatten());
    }
    if e.contains(&m.data) {
        return Ok(false);
    }
    basis.push(m);
    Ok(true)
}

/// Primitive idempotents of a diagonalizable `a` by Lagrange interpolation:
/// `E_i = Π_{j≠i} (A - θ_j I) / (θ_i - θ_j)`.
///
/// The result is checked against `E_i E_j = δ_ij E_i`, `Σ E_i = I` and
/// `A = Σ θ_i E_i`; a wrong or incomplete eigenvalue list fails those checks.
pub fn eigenprojection(a: &ExactMatrix, eigs: &[AlgebraicScalar]) -> Result<Vec<ExactMatrix>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("eigenprojection needs a square matrix".into()));
    }
    let n = a.rows();
    let mut projectors = Vec::with_capacity(eigs.len());
    for (i, ti) in eigs.iter().enumerate() {
        let mut e = ExactMatrix::identity(n);
        for (j, tj) in eigs.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = (ti - tj)
                .recip()
                .ok_or_else(|| Error::BadEigenvalues(format!("repeated eigenvalue {ti}")))?;
            e = e.mul(&a.shift(tj)).scale(&denom);
        }
        projectors.push(e);
    }
    let mut sum = ExactMatrix::zeros(n, n);
    let mut recon = ExactMatrix::zeros(n, n);
    for (i, ei) in projectors.iter().enumerate() {
        for (j, ej) in projectors.iter().enumerate() {
            let p = ei.mul(ej);
            let ok = if i == j { &p == ei || p.sub(ei).is_zero() } else { p.is_zero() };
            if !ok {
                return Err(Error::BadEigenvalues(format!(
                    "E_{i} E_{j} violates orthogonal idempotence"
                )));
            }
        }
        sum = sum.add(ei);
        recon = recon.add(&ei.scale(&eigs[i]));
    }
    if !sum.sub(&ExactMatrix::identity(n)).is_zero() {
        return Err(Error::BadEigenvalues("idempotents do not sum to I".into()));
    }
    if !recon.sub(a).is_zero() {
        return Err(Error::BadEigenvalues("A != Σ θ_i E_i".into()));
    }
    Ok(projectors)
}
