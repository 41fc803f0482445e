//! Dual idempotents, the dual adjacency matrix and the Terwilliger algebra
//! `T(x)` generated by `A` and the `E*_i(x)`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{AlgebraicScalar, ExactMatrix, FieldEchelon, IntEchelon, IntMatrix};
use crate::graph::{DistanceData, Graph};
use crate::scheme::{DrgParameters, EigenData};

/// Distance partition from a base vertex; `E*_i` is the diagonal indicator
/// of `classes[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualIdempotents {
    pub base: usize,
    pub classes: Vec<Vec<usize>>,
}

impl DualIdempotents {
    pub fn n(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn matrix(&self, i: usize) -> IntMatrix {
        let n = self.n();
        let mut m = IntMatrix::zeros(n, n);
        for &y in &self.classes[i] {
            m.set(y, y, 1);
        }
        m
    }

    pub fn matrices(&self) -> Vec<IntMatrix> {
        (0..self.classes.len()).map(|i| self.matrix(i)).collect()
    }
}

pub fn dual_idempotents(x: usize, dd: &DistanceData) -> Result<DualIdempotents> {
    if x >= dd.n() {
        return Err(Error::VertexOutOfRange { vertex: x, n: dd.n() });
    }
    let classes = (0..=dd.diameter()).map(|i| dd.class(x, i)).collect();
    Ok(DualIdempotents { base: x, classes })
}

/// Diagonal matrix `A*` with `(A*)_{yy} = |X| (E_1)_{xy}` for the idempotent
/// `E_1` chosen by a Q-polynomial ordering.
#[derive(Clone, Debug, Serialize)]
pub struct DualAdjacency {
    pub base: usize,
    pub ordering: Vec<usize>,
    pub theta_star: Vec<AlgebraicScalar>,
    #[serde(skip)]
    pub diagonal: Vec<AlgebraicScalar>,
}

impl DualAdjacency {
    pub fn matrix(&self) -> ExactMatrix {
        ExactMatrix::diagonal(&self.diagonal)
    }
}

pub fn dual_adjacency(x: usize, dd: &DistanceData, ed: &EigenData, ordering: &[usize]) -> Result<DualAdjacency> {
    let n = dd.n();
    if x >= n {
        return Err(Error::VertexOutOfRange { vertex: x, n });
    }
    if ordering.len() != ed.theta.len() || ordering.first() != Some(&0) {
        return Err(Error::DualAdjacency(format!("{ordering:?} is not an ordering of the idempotents fixing 0")));
    }
    let e1 = &ed.idempotents(dd)[ordering[1]];
    let nn = AlgebraicScalar::from_int(n as i64);
    let diagonal: Vec<AlgebraicScalar> = (0..n).map(|y| &nn * e1.get(x, y)).collect();
    let mut theta_star: Vec<Option<AlgebraicScalar>> = vec![None; dd.diameter() + 1];
    for (y, v) in diagonal.iter().enumerate() {
        let h = dd.dist(x, y);
        match &theta_star[h] {
            None => theta_star[h] = Some(v.clone()),
            Some(t) if t == v => {}
            Some(t) => {
                return Err(Error::DualAdjacency(format!(
                    "diagonal not constant on Γ_{h}({x}): {t} and {v}"
                )))
            }
        }
    }
    let theta_star: Vec<AlgebraicScalar> = theta_star.into_iter().map(|t| t.expect("every class is nonempty")).collect();
    for i in 0..theta_star.len() {
        for j in 0..i {
            if theta_star[i] == theta_star[j] {
                return Err(Error::DualAdjacency(format!("θ*_{j} = θ*_{i} = {}", theta_star[i])));
            }
        }
    }
    Ok(DualAdjacency { base: x, ordering: ordering.to_vec(), theta_star, diagonal })
}

/// Matrix of `A` on the standard basis `E*_0 1, …, E*_D 1` of the primary
/// module: `b_i` above, `a_i` on and `c_{i+1}` below the diagonal.
pub fn tridiagonal_primary(params: &DrgParameters) -> ExactMatrix {
    let s = params.diameter + 1;
    ExactMatrix::from_fn(s, s, |i, j| {
        let v = if i == j {
            params.a[i]
        } else if j == i + 1 {
            params.b[i]
        } else if i == j + 1 {
            params.c[j]
        } else {
            0
        };
        AlgebraicScalar::from_int(v as i64)
    })
}

/// `T(x)` described by the dimensions of its blocks `E*_i T E*_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TerwilligerAlgebra {
    pub base: usize,
    pub class_sizes: Vec<usize>,
    pub block_dims: Vec<Vec<usize>>,
    pub dim: usize,
}

/// Generates `T(x)` block by block.
///
/// `T(x)` is the direct sum of its blocks `E*_i T E*_j`, and is spanned by
/// words in the identity blocks `E*_i` and the adjacency blocks
/// `E*_i A E*_j` (`|i - j| ≤ 1`). Starting from the identity blocks, every
/// new basis element is multiplied on the left by each adjacency block until
/// nothing new appears; each block keeps its own integer echelon basis.
pub fn terwilliger_algebra(g: &Graph, x: usize) -> Result<TerwilligerAlgebra> {
    g.check_vertex(x)?;
    let dist = g.bfs(x);
    if dist.iter().any(Option::is_none) {
        return Err(Error::Disconnected);
    }
    let d = dist.iter().map(|v| v.unwrap()).max().unwrap_or(0);
    let classes: Vec<Vec<usize>> = (0..=d).map(|i| (0..g.n()).filter(|&y| dist[y] == Some(i)).collect()).collect();
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let s = d + 1;

    let mut gens: Vec<Vec<Option<IntMatrix>>> = vec![vec![None; s]; s];
    for i in 0..s {
        for j in i.saturating_sub(1)..(i + 2).min(s) {
            let block = IntMatrix::from_fn(sizes[i], sizes[j], |r, c| g.adjacent(classes[i][r], classes[j][c]) as i64);
            if !block.is_zero() {
                gens[i][j] = Some(block);
            }
        }
    }

    let mut echelons: Vec<Vec<IntEchelon>> =
        (0..s).map(|i| (0..s).map(|j| IntEchelon::new(sizes[i] * sizes[j])).collect()).collect();
    let mut elems: Vec<Vec<Vec<IntMatrix>>> = vec![vec![Vec::new(); s]; s];
    let mut queue = VecDeque::new();
    for i in 0..s {
        let id = IntMatrix::identity(sizes[i]);
        echelons[i][i].insert(id.to_bigint_vec());
        elems[i][i].push(id);
        queue.push_back((i, i, 0));
    }
    while let Some((j, l, idx)) = queue.pop_front() {
        for i in j.saturating_sub(1)..(j + 2).min(s) {
            let Some(gen) = &gens[i][j] else { continue };
            if echelons[i][l].rank() == sizes[i] * sizes[l] {
                continue;
            }
            let mut y = gen
                .checked_mul(&elems[j][l][idx])
                .ok_or_else(|| Error::Precondition("integer overflow while generating T(x)".into()))?;
            if y.is_zero() {
                continue;
            }
            y.remove_content();
            if echelons[i][l].insert(y.to_bigint_vec()) {
                elems[i][l].push(y);
                queue.push_back((i, l, elems[i][l].len() - 1));
            }
        }
    }
    let block_dims: Vec<Vec<usize>> = echelons.iter().map(|row| row.iter().map(IntEchelon::rank).collect()).collect();
    let dim = block_dims.iter().flatten().sum();
    Ok(TerwilligerAlgebra { base: x, class_sizes: sizes, block_dims, dim })
}

pub fn terwilliger_dim(g: &Graph, x: usize) -> Result<usize> {
    Ok(terwilliger_algebra(g, x)?.dim)
}

/// A basis of the unital algebra generated by some square matrices.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    pub generators: Vec<ExactMatrix>,
    pub basis: Vec<ExactMatrix>,
}

impl AlgebraBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn integer_matrix(m: &ExactMatrix) -> Option<IntMatrix> {
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j).as_integer()?;
            out.set(i, j, i64::try_from(v).ok()?);
        }
    }
    Some(out)
}

/// Unital algebra generated by `generators`: seeds the span with `I` and the
/// generators, then multiplies every pair of basis elements and inserts new
/// products until a full pass adds nothing.
///
/// Integer generators are handled over `Z`; otherwise arithmetic is exact in
/// the common quadratic field of the entries.
pub fn algebra_closure(generators: &[ExactMatrix]) -> Result<AlgebraBasis> {
    let Some(first) = generators.first() else {
        return Err(Error::Precondition("algebra_closure needs at least one generator".into()));
    };
    let n = first.rows();
    for m in generators {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch("generators must be square of one size".into()));
        }
        if !m.is_exact() {
            return Err(Error::FloatMode("algebra_closure requires exact generators".into()));
        }
    }
    let ints: Option<Vec<IntMatrix>> = generators.iter().map(integer_matrix).collect();
    let basis = match ints {
        Some(ints) => closure_int(n, &ints)?.iter().map(ExactMatrix::from_int).collect(),
        None => {
            let mut field = 0;
            for m in generators {
                let d = m.field()?;
                if d != 0 && field != 0 && d != field {
                    return Err(Error::DimensionMismatch("generators live in different quadratic fields".into()));
                }
                field = field.max(d);
            }
            closure_field(n, generators)
        }
    };
    Ok(AlgebraBasis { generators: generators.to_vec(), basis })
}

fn closure_int(n: usize, generators: &[IntMatrix]) -> Result<Vec<IntMatrix>> {
    let mut ech = IntEchelon::new(n * n);
    let mut basis = Vec::new();
    for m in std::iter::once(IntMatrix::identity(n)).chain(generators.iter().cloned()) {
        let mut m = m;
        m.remove_content();
        if !m.is_zero() && ech.insert(m.to_bigint_vec()) {
            basis.push(m);
        }
    }
    let mut done = 0;
    while done < basis.len() {
        let snapshot = basis.len();
        for i in 0..snapshot {
            for j in 0..snapshot {
                if i < done && j < done {
                    continue;
                }
                let mut p = basis[i]
                    .checked_mul(&basis[j])
                    .ok_or_else(|| Error::Precondition("integer overflow in algebra closure".into()))?;
                p.remove_content();
                if !p.is_zero() && ech.insert(p.to_bigint_vec()) {
                    basis.push(p);
                }
            }
        }
        done = snapshot;
    }
    Ok(basis)
}

fn closure_field(n: usize, generators: &[ExactMatrix]) -> Vec<ExactMatrix> {
    let mut ech = FieldEchelon::new(n * n);
    let mut basis = Vec::new();
    for m in std::iter::once(ExactMatrix::identity(n)).chain(generators.iter().cloned()) {
        if ech.insert(m.flatten()) {
            basis.push(m);
        }
    }
    let mut done = 0;
    while done < basis.len() {
        let snapshot = basis.len();
        for i in 0..snapshot {
            for j in 0..snapshot {
                if i < done && j < done {
                    continue;
                }
                let p = basis[i].mul(&basis[j]);
                if ech.insert(p.flatten()) {
                    basis.push(p);
                }
            }
        }
        done = snapshot;
    }
    basis
}

/// Generators `{A, E*_0(x), …, E*_D(x)}` as exact matrices.
pub fn standard_generators(g: &Graph, x: usize, dd: &DistanceData) -> Result<Vec<ExactMatrix>> {
    let ds = dual_idempotents(x, dd)?;
    let mut gens = vec![ExactMatrix::from_int(&g.adjacency_matrix())];
    gens.extend(ds.matrices().iter().map(ExactMatrix::from_int));
    Ok(gens)
}
