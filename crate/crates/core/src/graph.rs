//! Simple undirected graphs, BFS distances and graph file I/O.

use std::collections::VecDeque;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::IntMatrix;

/// Finite simple undirected graph on vertices `0..n`, stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    nbrs: Vec<Vec<usize>>,
    label: Option<String>,
}

impl Graph {
    /// Builds a graph from an edge list. Each unordered pair may appear once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], label: Option<String>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVertexSet);
        }
        let mut adj = vec![false; n * n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if adj[u * n + v] {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        Ok(Self::from_raw(n, adj, label))
    }

    /// Builds a graph from a square 0/1 matrix.
    pub fn from_adjacency(rows: &[Vec<u8>], label: Option<String>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyVertexSet);
        }
        let mut adj = vec![false; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "adjacency row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                if x > 1 {
                    return Err(Error::Parse(format!("adjacency entry ({i},{j}) is {x}, expected 0 or 1")));
                }
                adj[i * n + j] = x == 1;
            }
        }
        for i in 0..n {
            if adj[i * n + i] {
                return Err(Error::Loop(i));
            }
            for j in 0..i {
                if adj[i * n + j] != adj[j * n + i] {
                    return Err(Error::Asymmetric(j, i));
                }
            }
        }
        Ok(Self::from_raw(n, adj, label))
    }

    pub(crate) fn from_raw(n: usize, adj: Vec<bool>, label: Option<String>) -> Self {
        let nbrs = (0..n)
            .map(|i| (0..n).filter(|&j| adj[i * n + j]).collect())
            .collect();
        Graph { n, adj, nbrs, label }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    /// Common valency if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.degree(0);
        (0..self.n).all(|v| self.degree(v) == k).then_some(k)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.nbrs[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| self.adjacent(i, j) as i64)
    }

    pub(crate) fn adjacency_bits(&self) -> &[bool] {
        &self.adj
    }

    /// BFS distances from `x`; unreachable vertices get `None`.
    pub fn bfs(&self, x: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[x] = Some(0);
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap() + 1;
            for &v in &self.nbrs[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(Option::is_some)
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// All-pairs distances of a connected graph.
    pub fn distances(&self) -> Result<DistanceData> {
        let n = self.n;
        let mut dist = Vec::with_capacity(n * n);
        for x in 0..n {
            for d in self.bfs(x) {
                dist.push(d.ok_or(Error::Disconnected)?);
            }
        }
        let diameter = dist.iter().copied().max().unwrap_or(0);
        Ok(DistanceData { n, diameter, dist })
    }

    /// Subgraph induced on `vertices`, relabelled `0..m` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let m = vertices.len();
        let mut adj = vec![false; m * m];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                adj[i * m + j] = self.adjacent(u, v);
            }
        }
        Ok(Graph::from_raw(m, adj, None))
    }

    /// Complement within vertex set, keeping the label.
    pub fn complement(&self) -> Graph {
        let n = self.n;
        let adj = (0..n * n).map(|k| k / n != k % n && !self.adj[k]).collect();
        Graph::from_raw(n, adj, self.label.clone())
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            label: self.label.clone(),
        };
        serde_json::to_string(&file).expect("graph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let file: GraphFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(file.n, &edges, file.label)
    }

    /// Parses a plain-text edge list: one `u v` pair per line, `#` starts a
    /// comment. A line holding a single integer sets the vertex count;
    /// otherwise it is one more than the largest vertex mentioned.
    pub fn from_edge_list(s: &str) -> Result<Graph> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("line {}: bad integer {t:?}", lineno + 1)))
                })
                .collect::<Result<_>>()?;
            match nums[..] {
                [count] if n.is_none() && edges.is_empty() => n = Some(count),
                [u, v] => edges.push((u, v)),
                _ => return Err(Error::Parse(format!("line {}: expected \"u v\"", lineno + 1))),
            }
        }
        let n = match n {
            Some(n) => n,
            None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
        };
        Graph::from_edges(n, &edges, None)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Reads a graph from JSON or from a plain-text edge list. Disconnected
/// graphs load fine; analysis entry points reject them.
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        Graph::from_json(&text)
    } else {
        Graph::from_edge_list(&text)
    }
}

pub fn save_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let mut s = g.to_json();
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

/// Path-length distances of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceData {
    n: usize,
    diameter: usize,
    dist: Vec<usize>,
}

impl DistanceData {
    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, x: usize, y: usize) -> usize {
        self.dist[x * self.n + y]
    }

    /// `Γ_i(x)` in increasing vertex order.
    pub fn class(&self, x: usize, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.dist(x, y) == i).collect()
    }

    /// `|Γ_i(x)|` for `i = 0..=D`.
    pub fn class_sizes(&self, x: usize) -> Vec<usize> {
        let mut sizes = vec![0; self.diameter + 1];
        for y in 0..self.n {
            sizes[self.dist(x, y)] += 1;
        }
        sizes
    }

    /// The `i`th distance matrix `A_i`.
    pub fn distance_matrix(&self, i: usize) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |x, y| (self.dist(x, y) == i) as i64)
    }

    pub fn distance_matrices(&self) -> Vec<IntMatrix> {
        (0..=self.diameter).map(|i| self.distance_matrix(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], None).unwrap()
    }

    #[test]
    fn cycle_basics() {
        let g = c4();
        assert_eq!(g.regular_degree(), Some(2));
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let dd = g.distances().unwrap();
        assert_eq!(dd.diameter(), 2);
        assert_eq!(dd.class(0, 2), vec![2]);
        assert_eq!(dd.class_sizes(1), vec![1, 2, 1]);
    }

    #[test]
    fn validation() {
        assert!(matches!(Graph::from_edges(3, &[(0, 0)], None), Err(Error::Loop(0))));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)], None),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)], None),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        let rows = vec![vec![0, 1], vec![0, 0]];
        assert!(matches!(Graph::from_adjacency(&rows, None), Err(Error::Asymmetric(0, 1))));
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)], None).unwrap();
        assert!(!g.is_connected());
        assert!(matches!(g.distances(), Err(Error::Disconnected)));
    }

    #[test]
    fn complete_graph_diameter() {
        let edges: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        let g = Graph::from_edges(4, &edges, None).unwrap();
        assert_eq!(g.distances().unwrap().diameter(), 1);
    }

    #[test]
    fn edge_list_parsing() {
        let g = Graph::from_edge_list("# square\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g, c4());
        let g = Graph::from_edge_list("5\n0 1\n").unwrap();
        assert_eq!(g.n(), 5);
        assert!(Graph::from_edge_list("0 1 2\n").is_err());
        assert!(matches!(Graph::from_edge_list("0 0\n"), Err(Error::Loop(0))));
    }

    #[test]
    fn json_round_trip() {
        let g = c4().with_label("C4");
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(matches!(Graph::from_json("{\"n\": 2}"), Err(Error::Parse(_))));
    }

    #[test]
    fn induced() {
        let g = c4();
        let all: Vec<_> = (0..4).collect();
        assert_eq!(g.induced_subgraph(&all).unwrap(), g);
        let h = g.induced_subgraph(&[1, 3]).unwrap();
        assert_eq!(h.edge_count(), 0);
        assert!(matches!(g.induced_subgraph(&[]), Err(Error::EmptyVertexSet)));
        assert!(g.induced_subgraph(&[4]).is_err());
    }
}
