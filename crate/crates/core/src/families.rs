//! Constructors for the named graph families, with fixed vertex labelings.
//!
//! | family | params | labeling |
//! |---|---|---|
//! | `johnson` | n, k | k-subsets of `{0..n-1}` in colex order |
//! | `halved_cube` | n | even-weight words of length n, by integer value |
//! | `hamming` | d, q | words over `{0..q-1}` of length d, lexicographic |
//! | `shrikhande` | | `(i, j)` in Z4×Z4 is vertex `4i + j` |
//! | `rook_grid` | m | cell `(i, j)` is vertex `m·i + j` |
//! | `triangular_complement` | m | as `johnson(m, 2)` |
//! | `complete_bipartite` | t | parts `0..t` and `t..2t` |
//! | `icosahedron` | | 0 top, 1..=5 upper ring, 6..=10 lower ring, 11 bottom |
//! | `chang` | 1, 2 or 3 | as `johnson(8, 2)` |

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count a constructor will produce.
pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Johnson { n: usize, k: usize },
    HalvedCube { n: usize },
    Hamming { d: usize, q: usize },
    Shrikhande,
    RookGrid { m: usize },
    TriangularComplement { m: usize },
    CompleteBipartite { t: usize },
    Icosahedron,
    Chang { variant: usize },
}

pub const FAMILY_NAMES: [&str; 9] = [
    "johnson",
    "halved_cube",
    "hamming",
    "shrikhande",
    "rook_grid",
    "triangular_complement",
    "complete_bipartite",
    "icosahedron",
    "chang",
];

impl FamilySpec {
    /// Validates arity and ranges for a CLI-style `(name, params)` pair.
    pub fn new(family: &str, params: &[i64]) -> Result<Self> {
        let bad = |msg: String| Error::InvalidFamily(msg);
        let arity = |want: usize| -> Result<Vec<usize>> {
            if params.len() != want {
                return Err(bad(format!(
                    "{family} takes {want} parameter(s), got {}",
                    params.len()
                )));
            }
            params
                .iter()
                .map(|&p| usize::try_from(p).map_err(|_| bad(format!("negative parameter {p}"))))
                .collect()
        };
        let spec = match family {
            "johnson" => {
                let p = arity(2)?;
                FamilySpec::Johnson { n: p[0], k: p[1] }
            }
            "halved_cube" => FamilySpec::HalvedCube { n: arity(1)?[0] },
            "hamming" => {
                let p = arity(2)?;
                FamilySpec::Hamming { d: p[0], q: p[1] }
            }
            "shrikhande" => {
                arity(0)?;
                FamilySpec::Shrikhande
            }
            "rook_grid" => FamilySpec::RookGrid { m: arity(1)?[0] },
            "triangular_complement" => FamilySpec::TriangularComplement { m: arity(1)?[0] },
            "complete_bipartite" => FamilySpec::CompleteBipartite { t: arity(1)?[0] },
            "icosahedron" => {
                arity(0)?;
                FamilySpec::Icosahedron
            }
            "chang" => FamilySpec::Chang { variant: arity(1)?[0] },
            other => {
                return Err(bad(format!(
                    "unknown family {other:?}; expected one of {}",
                    FAMILY_NAMES.join(", ")
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Johnson { .. } => "johnson",
            FamilySpec::HalvedCube { .. } => "halved_cube",
            FamilySpec::Hamming { .. } => "hamming",
            FamilySpec::Shrikhande => "shrikhande",
            FamilySpec::RookGrid { .. } => "rook_grid",
            FamilySpec::TriangularComplement { .. } => "triangular_complement",
            FamilySpec::CompleteBipartite { .. } => "complete_bipartite",
            FamilySpec::Icosahedron => "icosahedron",
            FamilySpec::Chang { .. } => "chang",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            FamilySpec::Johnson { n, k } => vec![n, k],
            FamilySpec::HalvedCube { n } => vec![n],
            FamilySpec::Hamming { d, q } => vec![d, q],
            FamilySpec::RookGrid { m } | FamilySpec::TriangularComplement { m } => vec![m],
            FamilySpec::CompleteBipartite { t } => vec![t],
            FamilySpec::Chang { variant } => vec![variant],
            FamilySpec::Shrikhande | FamilySpec::Icosahedron => vec![],
        }
    }

    /// Number of vertices the constructor will produce (saturating).
    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Johnson { n, k } => binomial(n, k),
            FamilySpec::HalvedCube { n } => 1usize.checked_shl(n.saturating_sub(1) as u32).unwrap_or(usize::MAX),
            FamilySpec::Hamming { d, q } => q.checked_pow(d as u32).unwrap_or(usize::MAX),
            FamilySpec::Shrikhande => 16,
            FamilySpec::RookGrid { m } => m.saturating_mul(m),
            FamilySpec::TriangularComplement { m } => binomial(m, 2),
            FamilySpec::CompleteBipartite { t } => t.saturating_mul(2),
            FamilySpec::Icosahedron => 12,
            FamilySpec::Chang { .. } => 28,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidFamily(format!("{self}: {msg}")));
        match *self {
            FamilySpec::Johnson { n, k } if k == 0 || k >= n => return bad("need 1 <= k < n"),
            FamilySpec::HalvedCube { n } if n < 2 => return bad("need n >= 2"),
            FamilySpec::Hamming { d, q } if d == 0 || q < 2 => return bad("need d >= 1 and q >= 2"),
            FamilySpec::RookGrid { m } if m < 2 => return bad("need m >= 2"),
            FamilySpec::TriangularComplement { m } if m < 5 => {
                return bad("need m >= 5 (smaller complements are disconnected)")
            }
            FamilySpec::CompleteBipartite { t: 0 } => return bad("need t >= 1"),
            FamilySpec::Chang { variant } if !(1..=3).contains(&variant) => {
                return bad("variant must be 1, 2 or 3")
            }
            _ => {}
        }
        if self.vertex_count() > MAX_VERTICES {
            return bad(&format!("more than {MAX_VERTICES} vertices"));
        }
        Ok(())
    }

    pub fn construct(&self) -> Result<Graph> {
        self.validate()?;
        let g = match *self {
            FamilySpec::Johnson { n, k } => johnson(n, k),
            FamilySpec::HalvedCube { n } => halved_cube(n),
            FamilySpec::Hamming { d, q } => hamming(d, q),
            FamilySpec::Shrikhande => shrikhande(),
            FamilySpec::RookGrid { m } => rook_grid(m),
            FamilySpec::TriangularComplement { m } => johnson(m, 2).complement(),
            FamilySpec::CompleteBipartite { t } => complete_bipartite(t),
            FamilySpec::Icosahedron => icosahedron(),
            FamilySpec::Chang { variant } => seidel_switch(&johnson(8, 2), &chang_switching_set(variant))?,
        };
        Ok(g.with_label(self.to_string()))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.params().iter().map(ToString::to_string).collect();
        if p.is_empty() {
            write!(f, "{}", self.name())
        } else {
            write!(f, "{}({})", self.name(), p.join(","))
        }
    }
}

/// Shorthand for `FamilySpec::new(family, params)?.construct()`.
pub fn construct(family: &str, params: &[i64]) -> Result<Graph> {
    FamilySpec::new(family, params)?.construct()
}

/// Parses a comma-separated integer list such as `"8,2"`.
pub fn parse_params(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::InvalidFamily(format!("bad parameter {t:?}"))))
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = match r.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return usize::MAX,
        };
    }
    r
}

fn from_predicate(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Graph {
    let adj = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            i != j && adjacent(i, j)
        })
        .collect();
    Graph::from_raw(n, adj, None)
}

/// k-subsets of `{0..n-1}` as bitmasks, in colex order.
pub fn colex_subsets(n: usize, k: usize) -> Vec<u64> {
    assert!(n < 64, "colex_subsets supports n < 64");
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut s: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    loop {
        out.push(s);
        if s == 0 {
            break;
        }
        // next bitmask with the same popcount (Gosper's hack)
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
        if s >> n != 0 {
            break;
        }
    }
    out
}

/// Index of the 0-based pair `{a, b}` among 2-subsets in colex order.
pub fn colex_pair_index(a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    b * (b - 1) / 2 + a
}

fn johnson(n: usize, k: usize) -> Graph {
    let sets = colex_subsets(n, k);
    from_predicate(sets.len(), |i, j| (sets[i] & sets[j]).count_ones() as usize == k - 1)
}

fn halved_cube(n: usize) -> Graph {
    let words: Vec<u64> = (0..1u64 << n).filter(|w| w.count_ones() % 2 == 0).collect();
    from_predicate(words.len(), |i, j| (words[i] ^ words[j]).count_ones() == 2)
}

fn hamming(d: usize, q: usize) -> Graph {
    let n = q.pow(d as u32);
    let digits = |mut v: usize| {
        let mut out = vec![0; d];
        for slot in out.iter_mut().rev() {
            *slot = v % q;
            v /= q;
        }
        out
    };
    let words: Vec<Vec<usize>> = (0..n).map(digits).collect();
    from_predicate(n, |i, j| words[i].iter().zip(&words[j]).filter(|(a, b)| a != b).count() == 1)
}

fn shrikhande() -> Graph {
    let conn = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
    from_predicate(16, |u, v| {
        let di = (v / 4 + 4 - u / 4) % 4;
        let dj = (v % 4 + 4 - u % 4) % 4;
        conn.contains(&(di, dj))
    })
}

fn rook_grid(m: usize) -> Graph {
    from_predicate(m * m, |u, v| u / m == v / m || u % m == v % m)
}

fn complete_bipartite(t: usize) -> Graph {
    from_predicate(2 * t, |u, v| (u < t) != (v < t))
}

fn icosahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        let (u, u_next) = (1 + i, 1 + (i + 1) % 5);
        let (l, l_next) = (6 + i, 6 + (i + 1) % 5);
        edges.extend([(0, u), (u, u_next), (l, l_next), (l, 11), (u, l), (u, l_next)]);
    }
    Graph::from_edges(12, &edges, None).expect("hardcoded icosahedron is valid")
}

/// Complements adjacency between `s` and its complement.
pub fn seidel_switch(g: &Graph, s: &[usize]) -> Result<Graph> {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in s {
        g.check_vertex(v)?;
        inside[v] = true;
    }
    let adj = g
        .adjacency_bits()
        .iter()
        .enumerate()
        .map(|(idx, &a)| {
            let (i, j) = (idx / n, idx % n);
            if inside[i] != inside[j] {
                !a
            } else {
                a
            }
        })
        .collect();
    Ok(Graph::from_raw(n, adj, g.label().map(str::to_owned)))
}

/// Switching sets for the three Chang graphs as vertices of `johnson(8, 2)`.
/// The pairs are written with elements `1..=8`.
pub fn chang_switching_set(variant: usize) -> Vec<usize> {
    let pairs: &[(usize, usize)] = match variant {
        1 => &[(1, 5), (2, 6), (3, 7), (4, 8)],
        2 => &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 1)],
        3 => &[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 7), (7, 8), (8, 4)],
        _ => panic!("Chang variant must be 1, 2 or 3"),
    };
    pairs.iter().map(|&(a, b)| colex_pair_index(a - 1, b - 1)).collect()
}
