//! Distance-regularity, intersection numbers, eigenvalues and idempotents of
//! the Bose–Mesner algebra, Krein parameters, antipodality and tightness.

use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{AlgebraicScalar, ExactMatrix};
use crate::graph::{DistanceData, Graph};
use crate::spectra::{tridiagonal_spectrum, SrgParams};

/// Zero test used for float-mode Krein parameters.
pub const KREIN_FLOAT_TOL: f64 = 1e-9;

/// Parameters of a distance-regular graph, including the full tensor
/// `p^h_{ij}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrgParameters {
    pub diameter: usize,
    pub k: usize,
    /// `b_0..b_{D-1}`
    pub b: Vec<usize>,
    /// `c_1..c_D`
    pub c: Vec<usize>,
    /// `a_0..a_D`
    pub a: Vec<usize>,
    /// `k_0..k_D`
    pub class_sizes: Vec<usize>,
    #[serde(skip)]
    p: Vec<usize>,
}

impl DrgParameters {
    /// Parameters determined by an intersection array `{b_0..b_{D-1}; c_1..c_D}`.
    /// Fails when the array does not yield non-negative integral
    /// intersection numbers.
    pub fn from_array(b: &[usize], c: &[usize]) -> Result<Self> {
        let d = b.len();
        let bad = |msg: String| Error::Precondition(format!("intersection array {b:?};{c:?}: {msg}"));
        if c.len() != d || d == 0 {
            return Err(bad("need D >= 1 and equal lengths".into()));
        }
        let k = b[0];
        if c[0] != 1 {
            return Err(bad("c_1 must be 1".into()));
        }
        let bi = |i: usize| if i < d { b[i] as i128 } else { 0 };
        let ci = |i: usize| if i == 0 { 0 } else { c[i - 1] as i128 };
        let mut a = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let ai = k as i128 - bi(i) - ci(i);
            if ai < 0 {
                return Err(bad(format!("a_{i} = {ai} is negative")));
            }
            a.push(ai as usize);
        }
        // L_j e_i = Σ_h p^h_{ij} e_h; L_1 is tridiagonal and
        // c_{j+1} L_{j+1} = L_1 L_j - b_{j-1} L_{j-1} - a_j L_j.
        let size = d + 1;
        let idx = |r: usize, s: usize| r * size + s;
        let mut l1 = vec![0i128; size * size];
        for j in 0..size {
            if j > 0 {
                l1[idx(j - 1, j)] = bi(j - 1);
            }
            l1[idx(j, j)] = a[j] as i128;
            if j + 1 < size {
                l1[idx(j + 1, j)] = ci(j + 1);
            }
        }
        let mul = |x: &[i128], y: &[i128]| {
            let mut out = vec![0i128; size * size];
            for r in 0..size {
                for m in 0..size {
                    if x[idx(r, m)] != 0 {
                        for s in 0..size {
                            out[idx(r, s)] += x[idx(r, m)] * y[idx(m, s)];
                        }
                    }
                }
            }
            out
        };
        let mut ls: Vec<Vec<i128>> = vec![(0..size * size).map(|t| (t / size == t % size) as i128).collect(), l1.clone()];
        for j in 1..d {
            let prod = mul(&l1, &ls[j]);
            let mut next = vec![0i128; size * size];
            for t in 0..size * size {
                let num = prod[t] - bi(j - 1) * ls[j - 1][t] - a[j] as i128 * ls[j][t];
                if num % ci(j + 1) != 0 {
                    return Err(bad(format!("p^h_{{{},j}} is not integral", j + 1)));
                }
                next[t] = num / ci(j + 1);
            }
            ls.push(next);
        }
        let mut p = vec![0usize; size * size * size];
        for (i, li) in ls.iter().enumerate() {
            for h in 0..size {
                for j in 0..size {
                    let v = li[idx(h, j)];
                    if v < 0 {
                        return Err(bad(format!("p^{h}_{{{i}{j}}} = {v} is negative")));
                    }
                    p[(h * size + i) * size + j] = v as usize;
                }
            }
        }
        let class_sizes = (0..size).map(|i| p[i * size + i]).collect();
        Ok(DrgParameters { diameter: d, k, b: b.to_vec(), c: c.to_vec(), a, class_sizes, p })
    }

    /// `p^h_{ij}`.
    pub fn p(&self, h: usize, i: usize, j: usize) -> usize {
        let s = self.diameter + 1;
        self.p[(h * s + i) * s + j]
    }

    pub fn n(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    /// `b_i` with `b_D = 0`.
    pub fn b_at(&self, i: usize) -> usize {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i` with `c_0 = 0`.
    pub fn c_at(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    pub fn is_bipartite(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    /// SRG parameters when the diameter is 2.
    pub fn srg_params(&self) -> Option<SrgParams> {
        (self.diameter == 2)
            .then(|| SrgParams::new(self.n(), self.k, self.a[1], self.c[1]).ok())
            .flatten()
    }

    /// `{k, b, 1; 1, b, k}` shape: returns `(k, b)`.
    pub fn taylor_shape(&self) -> Option<(usize, usize)> {
        (self.diameter == 3 && self.b[2] == 1 && self.c[0] == 1 && self.c[1] == self.b[1] && self.c[2] == self.k)
            .then_some((self.k, self.b[1]))
    }

    /// `(p, q)` when the array is that of an AT4(p, q, 2) graph.
    pub fn at4_shape(&self) -> Option<(usize, usize)> {
        if self.diameter != 4 {
            return None;
        }
        let k = self.k;
        for q in 1..=k {
            if q * q > k {
                break;
            }
            if !k.is_multiple_of(q) {
                continue;
            }
            // k = q(pq + p + q)  ⇒  p = (k/q - q)/(q + 1)
            let rest = k / q;
            if rest <= q || !(rest - q).is_multiple_of(q + 1) {
                continue;
            }
            let p = (rest - q) / (q + 1);
            if p == 0 || !(q * (p + q)).is_multiple_of(2) {
                continue;
            }
            let mid = q * (p + q) / 2;
            let b1 = (q * q - 1) * (p + 1);
            if self.b == [k, b1, mid, 1] && self.c == [1, mid, b1, k] {
                return Some((p, q));
            }
        }
        None
    }
}

impl fmt::Display for DrgParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

/// Table `|Γ_i(x) ∩ Γ_j(y)|` indexed `i·(D+1) + j`.
fn pair_table(dd: &DistanceData, x: usize, y: usize, size: usize, out: &mut [usize]) {
    out.iter_mut().for_each(|v| *v = 0);
    for z in 0..dd.n() {
        let i = dd.dist(x, z);
        let j = dd.dist(y, z);
        out[i * size + j] += 1;
    }
}

/// Checks that every `p^h_{ij}` is independent of the pair `(x, y)` at
/// distance `h`, and returns the parameters.
pub fn verify_drg(g: &Graph) -> Result<DrgParameters> {
    let dd = g.distances()?;
    verify_drg_with(&dd)
}

/// As [`verify_drg`], reusing precomputed distances.
pub fn verify_drg_with(dd: &DistanceData) -> Result<DrgParameters> {
    let n = dd.n();
    let d = dd.diameter();
    let size = d + 1;
    let mut reference = vec![vec![0usize; size * size]; size];
    for (h, table) in reference.iter_mut().enumerate() {
        let y = (0..n).find(|&y| dd.dist(0, y) == h).expect("every distance up to D occurs from vertex 0");
        pair_table(dd, 0, y, size, table);
    }
    let violation = (0..n).into_par_iter().find_map_first(|x| {
        let mut table = vec![0usize; size * size];
        for y in 0..n {
            let h = dd.dist(x, y);
            pair_table(dd, x, y, size, &mut table);
            if let Some(t) = (0..size * size).find(|&t| table[t] != reference[h][t]) {
                return Some(Error::NotDistanceRegular {
                    h,
                    i: t / size,
                    j: t % size,
                    x,
                    y,
                    expected: reference[h][t],
                    found: table[t],
                });
            }
        }
        None
    });
    if let Some(e) = violation {
        return Err(e);
    }
    let p_at = |h: usize, i: usize, j: usize| reference[h][i * size + j];
    let b: Vec<usize> = (0..d).map(|i| p_at(i, 1, i + 1)).collect();
    let c: Vec<usize> = (1..=d).map(|i| p_at(i, 1, i - 1)).collect();
    let a: Vec<usize> = (0..=d).map(|i| p_at(i, 1, i)).collect();
    let mut p = vec![0usize; size * size * size];
    for h in 0..size {
        for t in 0..size * size {
            p[h * size * size + t] = reference[h][t];
        }
    }
    let class_sizes = (0..size).map(|i| p_at(0, i, i)).collect();
    Ok(DrgParameters { diameter: d, k: p_at(0, 1, 1), b, c, a, class_sizes, p })
}

/// Eigenvalues `θ_0 > … > θ_D`, multiplicities and cosine sequences
/// `u_h(θ_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct EigenData {
    pub theta: Vec<AlgebraicScalar>,
    pub mult: Vec<usize>,
    #[serde(skip)]
    pub cosines: Vec<Vec<AlgebraicScalar>>,
    pub exact: bool,
}

impl EigenData {
    /// Distinct irrational fields among the eigenvalues.
    pub fn fields(&self) -> Vec<u64> {
        let mut f: Vec<u64> = self.theta.iter().map(AlgebraicScalar::field).filter(|&d| d != 0).collect();
        f.sort_unstable();
        f.dedup();
        f
    }

    /// Primitive idempotents `E_i = (m_i/n) Σ_h u_h(θ_i) A_h`.
    pub fn idempotents(&self, dd: &DistanceData) -> Vec<ExactMatrix> {
        let n = dd.n();
        let nn = AlgebraicScalar::from_int(n as i64);
        (0..self.theta.len())
            .map(|i| {
                let scale = AlgebraicScalar::from_int(self.mult[i] as i64).checked_div(&nn).expect("n > 0");
                let coeffs: Vec<AlgebraicScalar> = self.cosines[i].iter().map(|u| u * &scale).collect();
                ExactMatrix::from_fn(n, n, |x, y| coeffs[dd.dist(x, y)].clone())
            })
            .collect()
    }
}

/// Eigenvalues from the tridiagonal intersection matrix and multiplicities
/// from the cosine sequences, `m_i = n / Σ_h k_h u_h(θ_i)²`.
pub fn eigen_data(params: &DrgParameters) -> Result<EigenData> {
    let d = params.diameter;
    let a: Vec<i64> = params.a.iter().map(|&x| x as i64).collect();
    let b: Vec<i64> = params.b.iter().map(|&x| x as i64).collect();
    let c: Vec<i64> = params.c.iter().map(|&x| x as i64).collect();
    let spec = tridiagonal_spectrum(&a, &b, &c);
    if spec.distinct() != d + 1 || spec.pairs().iter().any(|(_, m)| *m != 1) {
        return Err(Error::BadEigenvalues(format!(
            "intersection matrix spectrum {spec} does not have D+1 = {} simple eigenvalues",
            d + 1
        )));
    }
    let theta: Vec<AlgebraicScalar> = spec.values().cloned().collect();
    let exact = spec.is_exact();
    let int = |v: usize| AlgebraicScalar::from_int(v as i64);
    let n = params.n();
    let mut cosines = Vec::with_capacity(d + 1);
    let mut mult = Vec::with_capacity(d + 1);
    for th in &theta {
        let mut u = vec![AlgebraicScalar::one()];
        if d >= 1 {
            u.push(th.checked_div(&int(params.k)).expect("k > 0"));
        }
        for h in 1..d {
            // b_h u_{h+1} = (θ - a_h) u_h - c_h u_{h-1}
            let num = &(&(th - &int(params.a[h])) * &u[h]) - &(&int(params.c_at(h)) * &u[h - 1]);
            u.push(num.checked_div(&int(params.b[h])).expect("b_h > 0 for h < D"));
        }
        let norm: AlgebraicScalar = (0..=d).map(|h| &int(params.class_sizes[h]) * &(&u[h] * &u[h])).sum();
        let m = int(n).checked_div(&norm).ok_or_else(|| Error::BadEigenvalues(format!("zero norm at θ = {th}")))?;
        let m = if exact {
            m.as_integer()
                .and_then(|v| v.to_usize())
                .ok_or_else(|| Error::BadEigenvalues(format!("multiplicity {m} of θ = {th} is not a positive integer")))?
        } else {
            let r = m.to_f64().round();
            if (m.to_f64() - r).abs() > 1e-6 || r < 1.0 {
                return Err(Error::BadEigenvalues(format!("multiplicity {m} of θ = {th} is not an integer")));
            }
            r as usize
        };
        mult.push(m);
        cosines.push(u);
    }
    if mult.iter().sum::<usize>() != n {
        return Err(Error::BadEigenvalues("multiplicities do not sum to n".into()));
    }
    Ok(EigenData { theta, mult, cosines, exact })
}

/// Krein parameters `q^l_{ij}` and all Q-polynomial orderings.
#[derive(Clone, Debug, Serialize)]
pub struct KreinData {
    #[serde(skip)]
    q: Vec<AlgebraicScalar>,
    size: usize,
    pub exact: bool,
    pub qpoly_orderings: Vec<Vec<usize>>,
}

impl KreinData {
    /// `q^l_{ij}`.
    pub fn q(&self, l: usize, i: usize, j: usize) -> &AlgebraicScalar {
        &self.q[(l * self.size + i) * self.size + j]
    }

    pub fn is_zero(&self, l: usize, i: usize, j: usize) -> bool {
        let v = self.q(l, i, j);
        if v.is_exact() {
            v.is_zero()
        } else {
            v.to_f64().abs() < KREIN_FLOAT_TOL
        }
    }

    pub fn is_qpolynomial(&self, ordering: &[usize]) -> bool {
        let s = self.size;
        if ordering.len() != s || ordering.first() != Some(&0) {
            return false;
        }
        for h in 0..s {
            for i in 0..s {
                for j in 0..s {
                    let zero = self.is_zero(ordering[h], ordering[i], ordering[j]);
                    let (hi, ii, ji) = (h, i, j);
                    let exceeds = hi > ii + ji || ii > hi + ji || ji > hi + ii;
                    let equals = hi == ii + ji || ii == hi + ji || ji == hi + ii;
                    if (exceeds && !zero) || (equals && zero) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `q^l_{ij} = (m_i m_j / n) Σ_h k_h u_h(θ_i) u_h(θ_j) u_h(θ_l)`. Values
/// spanning two different quadratic fields are evaluated in floats.
pub fn krein(ed: &EigenData, params: &DrgParameters) -> Result<KreinData> {
    let s = params.diameter + 1;
    let n = params.n();
    let exact = ed.exact && ed.fields().len() <= 1;
    let mut q = Vec::with_capacity(s * s * s);
    for l in 0..s {
        for i in 0..s {
            for j in 0..s {
                let v = if exact {
                    let sum: AlgebraicScalar = (0..s)
                        .map(|h| {
                            let kh = AlgebraicScalar::from_int(params.class_sizes[h] as i64);
                            &(&kh * &ed.cosines[i][h]) * &(&ed.cosines[j][h] * &ed.cosines[l][h])
                        })
                        .sum();
                    let scale = AlgebraicScalar::from_frac((ed.mult[i] * ed.mult[j]) as i64, n as i64);
                    &sum * &scale
                } else {
                    let sum: f64 = (0..s)
                        .map(|h| {
                            params.class_sizes[h] as f64
                                * ed.cosines[i][h].to_f64()
                                * ed.cosines[j][h].to_f64()
                                * ed.cosines[l][h].to_f64()
                        })
                        .sum();
                    AlgebraicScalar::float(sum * (ed.mult[i] * ed.mult[j]) as f64 / n as f64)
                };
                let negative = if v.is_exact() { v.signum() < 0 } else { v.to_f64() < -KREIN_FLOAT_TOL };
                if negative {
                    return Err(Error::NegativeKrein { h: l, i, j, value: v.to_string() });
                }
                q.push(v);
            }
        }
    }
    let mut data = KreinData { q, size: s, exact, qpoly_orderings: Vec::new() };
    let rest: Vec<usize> = (1..s).collect();
    let mut orderings = Vec::new();
    permutations(&rest, &mut Vec::new(), &mut vec![false; rest.len()], &mut |perm| {
        let mut ord = vec![0];
        ord.extend_from_slice(perm);
        if data.is_qpolynomial(&ord) {
            orderings.push(ord);
        }
    });
    data.qpoly_orderings = orderings;
    Ok(data)
}

fn permutations(items: &[usize], cur: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&[usize])) {
    if cur.len() == items.len() {
        f(cur);
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i]);
            permutations(items, cur, used, f);
            cur.pop();
            used[i] = false;
        }
    }
}

/// The antipode map `x ↦ x̂` of an antipodal double cover (`D ≥ 2` and
/// `|Γ_D(x)| = 1` for every `x`), or `None`.
pub fn antipodality(dd: &DistanceData) -> Option<Vec<usize>> {
    let d = dd.diameter();
    if d < 2 {
        return None;
    }
    (0..dd.n())
        .map(|x| {
            let far = dd.class(x, d);
            (far.len() == 1).then(|| far[0])
        })
        .collect()
}

/// Both sides of the fundamental bound and the local eigenvalues `b±`.
#[derive(Clone, Debug, Serialize)]
pub struct Tightness {
    pub is_tight: bool,
    /// `(θ_1 + k/(a_1+1))(θ_D + k/(a_1+1))`
    pub lhs: AlgebraicScalar,
    /// `-k a_1 b_1 / (a_1+1)²`
    pub rhs: AlgebraicScalar,
    pub b_plus: AlgebraicScalar,
    pub b_minus: AlgebraicScalar,
}

pub fn tightness(params: &DrgParameters, ed: &EigenData) -> Result<Tightness> {
    let d = params.diameter;
    if d < 3 {
        return Err(Error::Precondition(format!("tightness needs D >= 3, got D = {d}")));
    }
    if params.is_bipartite() {
        return Err(Error::Bipartite);
    }
    let int = |v: usize| AlgebraicScalar::from_int(v as i64);
    let (k, a1, b1) = (params.k, params.a[1], params.b[1]);
    let t1 = &ed.theta[1];
    let td = &ed.theta[d];
    let shift = AlgebraicScalar::from_frac(k as i64, a1 as i64 + 1);
    let rhs = AlgebraicScalar::from_frac(-((k * a1 * b1) as i64), ((a1 + 1) * (a1 + 1)) as i64);
    let same_field = t1.field() == 0 || td.field() == 0 || t1.field() == td.field();
    let lhs = if t1.is_exact() && td.is_exact() && same_field {
        &(t1 + &shift) * &(td + &shift)
    } else {
        AlgebraicScalar::float((t1.to_f64() + shift.to_f64()) * (td.to_f64() + shift.to_f64()))
    };
    let is_tight = lhs.approx_eq(&rhs, KREIN_FLOAT_TOL);
    let minus_one = AlgebraicScalar::from_int(-1);
    let local = |th: &AlgebraicScalar| -> Result<AlgebraicScalar> {
        let q = int(b1)
            .checked_div(&(th + &AlgebraicScalar::one()))
            .ok_or_else(|| Error::Precondition(format!("1 + θ = 0 at θ = {th}")))?;
        Ok(&minus_one - &q)
    };
    Ok(Tightness { is_tight, lhs, rhs, b_plus: local(td)?, b_minus: local(t1)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::eigenprojection;
    use crate::families::construct;

    fn params_of(name: &str, p: &[i64]) -> DrgParameters {
        verify_drg(&construct(name, p).unwrap()).unwrap()
    }

    #[test]
    fn arrays() {
        assert_eq!(params_of("johnson", &[8, 2]).to_string(), "{12,5;1,4}");
        assert_eq!(params_of("icosahedron", &[]).to_string(), "{5,2,1;1,2,5}");
        assert_eq!(params_of("johnson", &[8, 4]).to_string(), "{16,9,4,1;1,4,9,16}");
        assert_eq!(params_of("halved_cube", &[8]).to_string(), "{28,15,6,1;1,6,15,28}");
    }

    #[test]
    fn from_array_matches_graph() {
        for (name, p) in [("johnson", vec![8, 4]), ("icosahedron", vec![]), ("hamming", vec![3, 3])] {
            let g = params_of(name, &p);
            let a = DrgParameters::from_array(&g.b, &g.c).unwrap();
            assert_eq!(a, g, "{name}");
        }
        assert!(DrgParameters::from_array(&[5, 2], &[1, 3]).is_err());
    }

    #[test]
    fn path_is_not_drg() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)], None).unwrap();
        match verify_drg(&g) {
            Err(Error::NotDistanceRegular { x, .. }) => assert!(x < 3),
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn shapes() {
        assert_eq!(params_of("icosahedron", &[]).taylor_shape(), Some((5, 2)));
        assert_eq!(params_of("johnson", &[6, 3]).taylor_shape(), Some((9, 4)));
        assert_eq!(params_of("johnson", &[8, 4]).at4_shape(), Some((2, 2)));
        assert_eq!(params_of("halved_cube", &[8]).at4_shape(), Some((4, 2)));
        assert_eq!(params_of("johnson", &[8, 2]).at4_shape(), None);
    }

    #[test]
    fn eigenvalues_and_multiplicities() {
        let ed = eigen_data(&params_of("johnson", &[8, 2])).unwrap();
        assert_eq!(ed.mult, vec![1, 7, 20]);
        let ed = eigen_data(&params_of("johnson", &[8, 4])).unwrap();
        let th: Vec<String> = ed.theta.iter().map(ToString::to_string).collect();
        assert_eq!(th, ["16", "8", "2", "-2", "-4"]);
        assert_eq!(ed.mult, vec![1, 7, 20, 28, 14]);
        let ed = eigen_data(&params_of("icosahedron", &[])).unwrap();
        let th: Vec<String> = ed.theta.iter().map(ToString::to_string).collect();
        assert_eq!(th, ["5", "√5", "-1", "-√5"]);
        assert_eq!(ed.mult, vec![1, 3, 5, 3]);
    }

    #[test]
    fn idempotents_agree_with_interpolation() {
        let g = construct("icosahedron", &[]).unwrap();
        let dd = g.distances().unwrap();
        let params = verify_drg_with(&dd).unwrap();
        let ed = eigen_data(&params).unwrap();
        let es = ed.idempotents(&dd);
        let a = ExactMatrix::from_int(&g.adjacency_matrix());
        let lagrange = eigenprojection(&a, &ed.theta).unwrap();
        assert_eq!(es, lagrange);
        let ranks: Vec<usize> = es.iter().map(|e| e.rank().unwrap()).collect();
        assert_eq!(ranks, vec![1, 3, 5, 3]);
    }

    #[test]
    fn krein_orderings() {
        let p = params_of("johnson", &[8, 2]);
        let kd = krein(&eigen_data(&p).unwrap(), &p).unwrap();
        assert!(kd.qpoly_orderings.contains(&vec![0, 1, 2]));
        let p = params_of("icosahedron", &[]);
        let kd = krein(&eigen_data(&p).unwrap(), &p).unwrap();
        assert!(!kd.qpoly_orderings.is_empty());
        for ord in &kd.qpoly_orderings {
            for i in 0..4 {
                assert!(kd.is_zero(ord[i], ord[1], ord[i]), "q^{i}_(1{i}) under {ord:?}");
            }
        }
        let p = params_of("johnson", &[8, 4]);
        let kd = krein(&eigen_data(&p).unwrap(), &p).unwrap();
        assert!(!kd.qpoly_orderings.is_empty());
    }

    #[test]
    fn antipodes() {
        let g = construct("johnson", &[8, 4]).unwrap();
        let dd = g.distances().unwrap();
        let map = antipodality(&dd).unwrap();
        let sets = crate::families::colex_subsets(8, 4);
        for (x, &y) in map.iter().enumerate() {
            assert_eq!(sets[x] ^ sets[y], 0xff);
        }
        let ico = construct("icosahedron", &[]).unwrap();
        let map = antipodality(&ico.distances().unwrap()).unwrap();
        assert_eq!(map[0], 11);
        assert!(antipodality(&construct("johnson", &[8, 2]).unwrap().distances().unwrap()).is_none());
    }

    #[test]
    fn tight_graphs() {
        let p = params_of("icosahedron", &[]);
        let t = tightness(&p, &eigen_data(&p).unwrap()).unwrap();
        assert!(t.is_tight);
        assert_eq!(t.lhs, AlgebraicScalar::from_frac(-20, 9));
        assert_eq!(t.rhs, AlgebraicScalar::from_frac(-20, 9));
        assert_eq!(t.b_plus.to_string(), "-1/2 + 1/2√5");
        assert_eq!(t.b_minus.to_string(), "-1/2 - 1/2√5");
        let p = params_of("johnson", &[8, 4]);
        let t = tightness(&p, &eigen_data(&p).unwrap()).unwrap();
        assert!(t.is_tight);
        assert_eq!(t.lhs, AlgebraicScalar::from_frac(-864, 49));
        assert_eq!((t.b_plus.to_string(), t.b_minus.to_string()), ("2".into(), "-2".into()));
        let p = params_of("hamming", &[3, 2]);
        assert!(matches!(tightness(&p, &eigen_data(&p).unwrap()), Err(Error::Bipartite)));
        let p = params_of("hamming", &[3, 3]);
        assert!(!tightness(&p, &eigen_data(&p).unwrap()).unwrap().is_tight);
    }
}
