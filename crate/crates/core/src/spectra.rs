//! Spectra of integer matrices and subconstituents, closed-form SRG spectra
//! and the second-subconstituent derivation from a local spectrum.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{AlgebraicScalar, IntMatrix};
use crate::graph::Graph;

/// Float eigenvalues closer than this are treated as one cluster.
pub const CLUSTER_TOL: f64 = 1e-6;
/// Value matching tolerance when a float spectrum takes part in a comparison.
pub const FLOAT_MATCH_TOL: f64 = 1e-8;

/// Multiset of eigenvalues, values strictly decreasing.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pairs: Vec<(AlgebraicScalar, usize)>,
}

impl Spectrum {
    /// Sorts by value (decreasing), merges equal values and drops zero
    /// multiplicities.
    pub fn new(mut pairs: Vec<(AlgebraicScalar, usize)>) -> Self {
        pairs.retain(|(_, m)| *m > 0);
        pairs.sort_by(|a, b| b.0.cmp_value(&a.0));
        let mut merged: Vec<(AlgebraicScalar, usize)> = Vec::with_capacity(pairs.len());
        for (v, m) in pairs {
            match merged.last_mut() {
                Some((last, lm)) if last.cmp_value(&v) == Ordering::Equal => *lm += m,
                _ => merged.push((v, m)),
            }
        }
        Spectrum { pairs: merged }
    }

    pub fn from_ints(pairs: &[(i64, usize)]) -> Self {
        Self::new(pairs.iter().map(|&(v, m)| (AlgebraicScalar::from_int(v), m)).collect())
    }

    pub fn pairs(&self) -> &[(AlgebraicScalar, usize)] {
        &self.pairs
    }

    pub fn values(&self) -> impl Iterator<Item = &AlgebraicScalar> {
        self.pairs.iter().map(|(v, _)| v)
    }

    pub fn distinct(&self) -> usize {
        self.pairs.len()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> usize {
        self.pairs.iter().map(|(_, m)| m).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.pairs.iter().all(|(v, _)| v.is_exact())
    }

    pub fn largest(&self) -> Option<&AlgebraicScalar> {
        self.pairs.first().map(|(v, _)| v)
    }

    /// Multiplicity of `value` (0 if absent).
    pub fn mult(&self, value: &AlgebraicScalar) -> usize {
        self.pairs
            .iter()
            .find(|(v, _)| v.approx_eq(value, FLOAT_MATCH_TOL))
            .map_or(0, |(_, m)| *m)
    }

    pub fn contains(&self, value: &AlgebraicScalar) -> bool {
        self.mult(value) > 0
    }

    /// Removes one copy of `value`.
    pub fn without_one(&self, value: &AlgebraicScalar) -> Result<Spectrum> {
        let mut pairs = self.pairs.clone();
        let entry = pairs
            .iter_mut()
            .find(|(v, _)| v.approx_eq(value, FLOAT_MATCH_TOL))
            .ok_or_else(|| Error::InconsistentSpectrum(format!("{value} is not an eigenvalue of {self}")))?;
        entry.1 -= 1;
        Ok(Spectrum::new(pairs))
    }

    /// Exact trace `Σ value·mult` when every irrational part cancels (as it
    /// does for a matrix with rational entries).
    pub fn trace(&self) -> Option<BigRational> {
        let mut rational = BigRational::zero();
        let mut surd_parts: Vec<(u64, BigRational)> = Vec::new();
        for (v, m) in &self.pairs {
            let q = v.as_exact()?;
            let m = BigRational::from_integer(BigInt::from(*m));
            rational += q.rational_part() * &m;
            if q.radicand() != 0 {
                let c = q.surd_coeff() * &m;
                match surd_parts.iter_mut().find(|(d, _)| *d == q.radicand()) {
                    Some((_, acc)) => *acc += c,
                    None => surd_parts.push((q.radicand(), c)),
                }
            }
        }
        surd_parts.iter().all(|(_, c)| c.is_zero()).then_some(rational)
    }

    pub fn trace_f64(&self) -> f64 {
        self.pairs.iter().map(|(v, m)| v.to_f64() * *m as f64).sum()
    }

    /// Values as floats, expanded with multiplicity, decreasing.
    pub fn expanded_f64(&self) -> Vec<f64> {
        self.pairs
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.to_f64(), *m))
            .collect()
    }

    /// Applies `f` to every value, keeping multiplicities.
    pub fn map(&self, f: impl Fn(&AlgebraicScalar) -> AlgebraicScalar) -> Spectrum {
        Spectrum::new(self.pairs.iter().map(|(v, m)| (f(v), *m)).collect())
    }

    /// Union of two multisets.
    pub fn union(&self, other: &Spectrum) -> Spectrum {
        Spectrum::new(self.pairs.iter().chain(&other.pairs).cloned().collect())
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, m)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let s = v.to_string();
            if v.is_exact() && v.is_rational() && v.signum() >= 0 && !s.contains('/') {
                write!(f, "{s}^{m}")?;
            } else {
                write!(f, "({s})^{m}")?;
            }
        }
        f.write_str("}")
    }
}

impl FromStr for Spectrum {
    type Err = Error;

    /// Parses the `Display` form, e.g. `{6^1, (1/2 + 1/2√5)^2, (-2)^5}`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("spectrum must be wrapped in braces: {s:?}")))?;
        let mut pairs = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let (value, after) = if let Some(r) = rest.strip_prefix('(') {
                let close = r.find(')').ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
                (&r[..close], &r[close + 1..])
            } else {
                let caret = rest.find('^').ok_or_else(|| Error::Parse(format!("missing multiplicity in {s:?}")))?;
                (&rest[..caret], &rest[caret..])
            };
            let after = after
                .trim_start()
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("missing '^' in {s:?}")))?;
            let end = after.find(',').unwrap_or(after.len());
            let mult: usize = after[..end]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity in {s:?}")))?;
            pairs.push((value.trim().parse::<AlgebraicScalar>()?, mult));
            rest = after[end..].trim_start_matches(',').trim();
        }
        Ok(Spectrum::new(pairs))
    }
}

#[derive(Serialize, Deserialize)]
struct SpectrumEntry {
    value: AlgebraicScalar,
    mult: usize,
}

impl Serialize for Spectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<SpectrumEntry> = self
            .pairs
            .iter()
            .map(|(v, m)| SpectrumEntry { value: v.clone(), mult: *m })
            .collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<SpectrumEntry>::deserialize(d)?;
        Ok(Spectrum::new(entries.into_iter().map(|e| (e.value, e.mult)).collect()))
    }
}

/// Groups sorted floats into clusters of nearby values: (mean, count).
fn cluster(mut xs: Vec<f64>) -> Vec<(f64, usize)> {
    xs.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for x in xs {
        match out.last_mut() {
            Some((sum, count, last)) if (*last - x).abs() <= CLUSTER_TOL * (1.0 + x.abs()) => {
                *sum += x;
                *count += 1;
                *last = x;
            }
            _ => out.push((x, 1, x)),
        }
    }
    out.into_iter().map(|(s, c, _)| (s / c as f64, c)).collect()
}

fn near_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() <= CLUSTER_TOL * (1.0 + x.abs())).then_some(r as i64)
}

fn nullity(m: &IntMatrix) -> usize {
    m.rows() - m.rank()
}

/// Certifies float eigenvalue estimates of a diagonalizable integer matrix.
///
/// Integer candidates `r` get multiplicity `n - rank(M - rI)`; conjugate pairs
/// `(s ± √disc)/2` get `(n - rank(M² - sM + pI)) / 2`. Both are exact kernel
/// dimensions, so when the certified multiplicities add up to `n` the
/// spectrum is exact. Otherwise the uncertified clusters are kept as floats.
pub fn certify_spectrum(m: &IntMatrix, estimates: Vec<f64>) -> Spectrum {
    let n = m.rows();
    let clusters = cluster(estimates);
    let mut certified: Vec<(AlgebraicScalar, usize)> = Vec::new();
    let mut done = vec![false; clusters.len()];
    let mut found = 0;
    for (i, &(x, _)) in clusters.iter().enumerate() {
        if let Some(r) = near_integer(x) {
            let mult = nullity(&m.add_identity(-r));
            if mult > 0 {
                certified.push((AlgebraicScalar::from_int(r), mult));
                found += mult;
                done[i] = true;
            }
        }
    }
    let m2 = m.mul(m);
    for i in 0..clusters.len() {
        if done[i] {
            continue;
        }
        for j in i + 1..clusters.len() {
            if done[j] {
                continue;
            }
            let (x, y) = (clusters[i].0, clusters[j].0);
            let (Some(s), Some(p)) = (near_integer(x + y), near_integer(x * y)) else {
                continue;
            };
            if s * s - 4 * p <= 0 {
                continue;
            }
            let poly = m2.combine(1, m, -s).add_identity(p);
            let k = nullity(&poly);
            if k == 0 || !k.is_multiple_of(2) {
                continue;
            }
            let Some((hi, lo)) = AlgebraicScalar::quadratic_roots(&BigInt::from(s), &BigInt::from(p)) else {
                continue;
            };
            if hi.is_rational() {
                continue;
            }
            certified.push((hi, k / 2));
            certified.push((lo, k / 2));
            found += k;
            done[i] = true;
            done[j] = true;
            break;
        }
    }
    if found == n {
        return Spectrum::new(certified);
    }
    let floats = clusters
        .iter()
        .zip(&done)
        .filter(|(_, d)| !**d)
        .map(|(&(x, c), _)| (AlgebraicScalar::float(x), c));
    Spectrum::new(certified.into_iter().chain(floats).collect())
}

/// Spectrum of a symmetric integer matrix.
pub fn symmetric_spectrum(m: &IntMatrix) -> Spectrum {
    assert!(m.is_symmetric(), "symmetric_spectrum needs a symmetric matrix");
    let n = m.rows();
    if n == 0 {
        return Spectrum::new(Vec::new());
    }
    let dm = DMatrix::from_fn(n, n, |i, j| m.get(i, j) as f64);
    let eig = SymmetricEigen::new(dm);
    certify_spectrum(m, eig.eigenvalues.iter().copied().collect())
}

/// Adjacency spectrum of a graph.
pub fn graph_spectrum(g: &Graph) -> Spectrum {
    symmetric_spectrum(&g.adjacency_matrix())
}

/// Spectrum of the tridiagonal matrix with diagonal `a`, superdiagonal `b`
/// and subdiagonal `c` (lengths `D+1`, `D`, `D`), assuming every
/// `b_i c_i > 0`. Float estimates come from the similar symmetric matrix.
pub fn tridiagonal_spectrum(a: &[i64], b: &[i64], c: &[i64]) -> Spectrum {
    let n = a.len();
    let sym = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            a[i] as f64
        } else if j == i + 1 {
            ((b[i] * c[i]) as f64).sqrt()
        } else if i == j + 1 {
            ((b[j] * c[j]) as f64).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(sym);
    let exact = IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            a[i]
        } else if j == i + 1 {
            b[i]
        } else if i == j + 1 {
            c[j]
        } else {
            0
        }
    });
    certify_spectrum(&exact, eig.eigenvalues.iter().copied().collect())
}

/// Spectrum of the subgraph induced on `Γ_i(x)`.
pub fn subconstituent_spectrum(g: &Graph, x: usize, i: usize) -> Result<Spectrum> {
    g.check_vertex(x)?;
    let dist = g.bfs(x);
    let class: Vec<usize> = (0..g.n()).filter(|&y| dist[y] == Some(i)).collect();
    let sub = g.induced_subgraph(&class)?;
    Ok(graph_spectrum(&sub))
}

/// Strongly regular parameters `(n, k, a, c)` with the derived eigenvalues
/// `σ > τ` and their multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub a: usize,
    pub c: usize,
    sigma: AlgebraicScalar,
    tau: AlgebraicScalar,
    m_sigma: usize,
    m_tau: usize,
}

impl SrgParams {
    /// Validates feasibility: the counting identity `k(k-a-1) = (n-k-1)c`
    /// and non-negative integral multiplicities.
    pub fn new(n: usize, k: usize, a: usize, c: usize) -> Result<Self> {
        let bad = |msg: String| Error::InfeasibleSrg(format!("({n},{k},{a},{c}): {msg}"));
        if k == 0 || k >= n || a >= k || c == 0 || c > k {
            return Err(bad("need 0 < k < n, a < k and 0 < c <= k".into()));
        }
        if k * (k - a - 1) != (n - k - 1) * c {
            return Err(bad("k(k-a-1) != (n-k-1)c".into()));
        }
        let (ni, ki, ai, ci) = (n as i64, k as i64, a as i64, c as i64);
        // σ, τ are the roots of x² - (a-c)x - (k-c)
        let (sigma, tau) = AlgebraicScalar::quadratic_roots(&BigInt::from(ai - ci), &BigInt::from(ci - ki))
            .expect("discriminant (a-c)² + 4(k-c) is non-negative");
        let big = |v: i64| AlgebraicScalar::from_int(v);
        let m_of = |num_root: &AlgebraicScalar, other: &AlgebraicScalar| -> Result<usize> {
            // m_σ = ((n-1)τ + k)/(τ - σ), and symmetrically for τ
            let num = &(&big(ni - 1) * num_root) + &big(ki);
            let m = num
                .checked_div(&(num_root - other))
                .ok_or_else(|| bad("σ = τ".into()))?;
            let v = m.as_integer().ok_or_else(|| bad(format!("multiplicity {m} is not an integer")))?;
            if v.is_negative() {
                return Err(bad(format!("negative multiplicity {v}")));
            }
            Ok(v.to_usize().expect("multiplicity fits in usize"))
        };
        let m_sigma = m_of(&tau, &sigma)?;
        let m_tau = m_of(&sigma, &tau)?;
        if 1 + m_sigma + m_tau != n {
            return Err(bad("multiplicities do not sum to n".into()));
        }
        Ok(SrgParams { n, k, a, c, sigma, tau, m_sigma, m_tau })
    }

    pub fn sigma(&self) -> &AlgebraicScalar {
        &self.sigma
    }

    pub fn tau(&self) -> &AlgebraicScalar {
        &self.tau
    }

    pub fn m_sigma(&self) -> usize {
        self.m_sigma
    }

    pub fn m_tau(&self) -> usize {
        self.m_tau
    }

    /// `a - c`, which equals `σ + τ`.
    pub fn a_minus_c(&self) -> AlgebraicScalar {
        AlgebraicScalar::from_int(self.a as i64 - self.c as i64)
    }

    pub fn is_sigma_or_tau(&self, v: &AlgebraicScalar) -> bool {
        v.approx_eq(&self.sigma, FLOAT_MATCH_TOL) || v.approx_eq(&self.tau, FLOAT_MATCH_TOL)
    }

    /// The local dual `λ ↦ a - c - λ`.
    pub fn dual(&self, v: &AlgebraicScalar) -> AlgebraicScalar {
        &self.a_minus_c() - v
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.a, self.c)
    }
}

/// `{k¹, σ^{m_σ}, τ^{m_τ}}`.
pub fn srg_spectrum(p: &SrgParams) -> Spectrum {
    Spectrum::new(vec![
        (AlgebraicScalar::from_int(p.k as i64), 1),
        (p.sigma.clone(), p.m_sigma),
        (p.tau.clone(), p.m_tau),
    ])
}

/// Local part of a subconstituent spectrum: one copy of the trivial
/// eigenvalue removed. For a disconnected subconstituent the remaining
/// copies of the trivial value stay in as local eigenvalues.
pub fn local_part(spec: &Spectrum, trivial: usize) -> Result<Spectrum> {
    spec.without_one(&AlgebraicScalar::from_int(trivial as i64))
}

/// Multiplicities `(f_σ, f_τ)` of σ and τ among the local eigenvalues of
/// `Δ(x)`.
pub fn local_sigma_tau(local: &Spectrum, p: &SrgParams) -> Result<(usize, usize)> {
    let l = local_part(local, p.a)?;
    Ok((l.mult(&p.sigma), l.mult(&p.tau)))
}

/// Multiplicities `(g_σ, g_τ)` of σ and τ among the local eigenvalues of
/// `Δ₂(x)`, from the local spectrum of `Δ(x)` alone.
pub fn second_sigma_tau(local: &Spectrum, p: &SrgParams) -> Result<(usize, usize)> {
    let (f_sigma, f_tau) = local_sigma_tau(local, p)?;
    let g_sigma = p.m_sigma as i64 + f_tau as i64 - p.k as i64;
    let g_tau = p.m_tau as i64 + f_sigma as i64 - p.k as i64;
    if g_sigma < 0 || g_tau < 0 {
        return Err(Error::InconsistentSpectrum(format!(
            "local spectrum {local} gives negative multiplicities g_σ = {g_sigma}, g_τ = {g_tau} for {p}"
        )));
    }
    Ok((g_sigma as usize, g_tau as usize))
}

/// Spectrum of `Δ₂(x)` determined by the spectrum of `Δ(x)`.
pub fn second_subconstituent_derived(local: &Spectrum, p: &SrgParams) -> Result<Spectrum> {
    if local.total() != p.k {
        return Err(Error::InconsistentSpectrum(format!(
            "local spectrum {local} has {} eigenvalues, expected k = {}",
            local.total(),
            p.k
        )));
    }
    let l = local_part(local, p.a)?;
    let (g_sigma, g_tau) = second_sigma_tau(local, p)?;
    let mut pairs = vec![
        (AlgebraicScalar::from_int(p.k as i64 - p.c as i64), 1),
        (p.sigma.clone(), g_sigma),
        (p.tau.clone(), g_tau),
    ];
    for (v, m) in l.pairs() {
        if !p.is_sigma_or_tau(v) {
            pairs.push((p.dual(v), *m));
        }
    }
    let out = Spectrum::new(pairs);
    if out.total() != p.n - p.k - 1 {
        return Err(Error::InconsistentSpectrum(format!(
            "derived second subconstituent {out} has {} eigenvalues, expected {}",
            out.total(),
            p.n - p.k - 1
        )));
    }
    Ok(out)
}

/// Checks that the local eigenvalues of `Δ(x)` outside `{σ, τ}` and those
/// of `Δ₂(x)` correspond under `λ ↦ a - c - λ` with equal multiplicities.
pub fn local_duality_check(s1: &Spectrum, s2: &Spectrum, p: &SrgParams) -> bool {
    let (Ok(l1), Ok(l2)) = (local_part(s1, p.a), local_part(s2, p.k - p.c)) else {
        return false;
    };
    let forward = l1
        .pairs()
        .iter()
        .filter(|(v, _)| !p.is_sigma_or_tau(v))
        .all(|(v, m)| l2.mult(&p.dual(v)) == *m);
    let backward = l2
        .pairs()
        .iter()
        .filter(|(v, _)| !p.is_sigma_or_tau(v))
        .all(|(v, m)| l1.mult(&p.dual(v)) == *m);
    forward && backward
}

/// Multiset equality; exact when both sides are exact, otherwise values are
/// matched within [`FLOAT_MATCH_TOL`].
pub fn cospectral(s1: &Spectrum, s2: &Spectrum) -> bool {
    if s1.is_exact() && s2.is_exact() {
        return s1 == s2;
    }
    s1.distinct() == s2.distinct()
        && s1
            .pairs()
            .iter()
            .zip(s2.pairs())
            .all(|((v1, m1), (v2, m2))| m1 == m2 && v1.approx_eq(v2, FLOAT_MATCH_TOL))
}
