//! The k-uniform hypergraph data model and its structural predicates.
//!
//! A [`Hypergraph`] is stored in canonical order: every edge is a strictly
//! ascending list of vertex ids and the edge list itself is sorted
//! lexicographically. Vertex ids are dense in `[0, n)` and every vertex must
//! lie on at least one edge.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised when a hypergraph fails validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("uniformity k = {0} is below 2")]
    UniformityTooSmall(usize),
    #[error("vertex count n = {n} is below k = {k}")]
    TooFewVertices { n: usize, k: usize },
    #[error("hypergraph has no edges")]
    NoEdges,
    #[error("edge {index} has {len} vertices, expected {k}")]
    WrongEdgeSize { index: usize, len: usize, k: usize },
    #[error("edge {index} contains vertex {vertex} outside [0, {n})")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge {index} is not strictly ascending")]
    UnsortedEdge { index: usize },
    #[error("edge {index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: usize },
    #[error("edge {index} duplicates an earlier edge")]
    DuplicateEdge { index: usize },
    #[error("edge {index} is out of lexicographic order")]
    UnsortedEdgeList { index: usize },
    #[error("vertex {0} lies on no edge")]
    IsolatedVertex(usize),
    #[error("vertex {vertex} is not in [0, {n})")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("hypergraph is disconnected")]
    Disconnected,
    #[error("malformed hypergraph JSON: {0}")]
    Json(String),
}

/// A simple k-uniform hypergraph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawHypergraph::deserialize(de)?;
        Hypergraph::new(raw.k, raw.n, raw.edges).map_err(serde::de::Error::custom)
    }
}

impl Hypergraph {
    /// Builds a hypergraph from edges that are already in canonical storage
    /// order. Nothing is normalised: any deviation is an error.
    pub fn new(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        if k < 2 {
            return Err(HypergraphError::UniformityTooSmall(k));
        }
        if n < k {
            return Err(HypergraphError::TooFewVertices { n, k });
        }
        if edges.is_empty() {
            return Err(HypergraphError::NoEdges);
        }
        let mut covered = vec![false; n];
        for (index, e) in edges.iter().enumerate() {
            if e.len() != k {
                return Err(HypergraphError::WrongEdgeSize { index, len: e.len(), k });
            }
            for (j, &v) in e.iter().enumerate() {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange { index, vertex: v, n });
                }
                if j > 0 {
                    if e[j - 1] == v {
                        return Err(HypergraphError::RepeatedVertex { index, vertex: v });
                    }
                    if e[j - 1] > v {
                        return Err(HypergraphError::UnsortedEdge { index });
                    }
                }
                covered[v] = true;
            }
            if index > 0 {
                match edges[index - 1].cmp(e) {
                    std::cmp::Ordering::Equal => return Err(HypergraphError::DuplicateEdge { index }),
                    std::cmp::Ordering::Greater => return Err(HypergraphError::UnsortedEdgeList { index }),
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(HypergraphError::IsolatedVertex(v));
        }
        Ok(Hypergraph { k, n, edges })
    }

    /// Sorts each edge and the edge list, then validates. Repeated vertices
    /// and duplicate edges are still rejected.
    pub fn from_unsorted(k: usize, n: usize, mut edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        for (index, e) in edges.iter_mut().enumerate() {
            e.sort_unstable();
            if let Some(w) = e.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex { index, vertex: w[0] });
            }
        }
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by(|&a, &b| edges[a].cmp(&edges[b]));
        for w in order.windows(2) {
            if edges[w[0]] == edges[w[1]] {
                return Err(HypergraphError::DuplicateEdge { index: w[0].max(w[1]) });
            }
        }
        edges.sort();
        Hypergraph::new(k, n, edges)
    }

    pub fn from_json(text: &str) -> Result<Self, HypergraphError> {
        serde_json::from_str(text).map_err(|e| HypergraphError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialisation cannot fail")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[usize] {
        &self.edges[index]
    }

    /// Position of `edge` (in any vertex order) in the sorted edge list.
    pub fn edge_index(&self, edge: &[usize]) -> Option<usize> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// Edge indices incident with each vertex, ascending.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Applies a vertex relabelling `perm[v] = image of v`.
    pub fn relabel(&self, perm: &[usize]) -> Hypergraph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let edges = self.edges.iter().map(|e| e.iter().map(|&v| perm[v]).collect()).collect();
        Hypergraph::from_unsorted(self.k, self.n, edges).expect("relabelling preserves validity")
    }

    /// Connected components of the vertex set, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let inc = self.incidence();
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &ei in &inc[v] {
                    for &u in &self.edges[ei] {
                        if !seen[u] {
                            seen[u] = true;
                            comp.push(u);
                            queue.push_back(u);
                        }
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// `(k-1)m - (n - c)` for `c` components; equals `(k-1)m - (n-1)` on
    /// connected inputs.
    pub fn cyclomatic_number(&self) -> i64 {
        let c = self.components().len() as i64;
        (self.k as i64 - 1) * self.m() as i64 - (self.n as i64 - c)
    }

    /// Connected with cyclomatic number one.
    pub fn is_unicyclic(&self) -> bool {
        self.is_connected() && self.cyclomatic_number() == 1
    }

    /// Connected and acyclic.
    pub fn is_supertree(&self) -> bool {
        self.is_connected() && self.cyclomatic_number() == 0
    }

    /// Edges with exactly one vertex of degree greater than one.
    pub fn pendant_edges(&self) -> Vec<usize> {
        let deg = self.degrees();
        (0..self.m()).filter(|&i| self.edges[i].iter().filter(|&&v| deg[v] > 1).count() == 1).collect()
    }

    /// Degree-one vertices lying on pendant edges.
    pub fn pp_vertices(&self) -> Vec<usize> {
        let deg = self.degrees();
        let mut out: Vec<usize> = self
            .pendant_edges()
            .into_iter()
            .flat_map(|i| self.edges[i].iter().copied())
            .filter(|&v| deg[v] == 1)
            .collect();
        out.sort_unstable();
        out
    }

    /// Length of the shortest alternating vertex/edge path from `u` to `v`.
    /// `distance(u, u)` is zero.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize, HypergraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(HypergraphError::InvalidVertex { vertex: w, n: self.n });
            }
        }
        if !self.is_connected() {
            return Err(HypergraphError::Disconnected);
        }
        Ok(self.distances_from(u)[v].expect("connected"))
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let inc = self.incidence();
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &ei in &inc[x] {
                for &y in &self.edges[ei] {
                    if dist[y].is_none() {
                        dist[y] = Some(d + 1);
                        queue.push_back(y);
                    }
                }
            }
        }
        dist
    }

    /// Computes connectivity, cyclomatic number, the shortest cycle, degree
    /// extremes and pendant structure.
    pub fn validate(&self) -> StructureReport {
        let deg = self.degrees();
        StructureReport {
            connected: self.is_connected(),
            cyclomatic_r: self.cyclomatic_number(),
            cycle: self.shortest_cycle(),
            degree_min: deg.iter().copied().min().unwrap_or(0),
            degree_max: deg.iter().copied().max().unwrap_or(0),
            pendant_edges: self.pendant_edges(),
            pp_vertices: self.pp_vertices(),
        }
    }

    /// Shortest cycle in the alternating form `v1 e1 v2 ... vq eq v1`.
    ///
    /// Cycles are cycles of the vertex/edge incidence graph. Among all
    /// shortest ones the lexicographically least `(v1, e1, v2, e2, ...)`
    /// sequence is returned, which starts at the cycle's smallest vertex.
    pub fn shortest_cycle(&self) -> Option<Cycle> {
        let girth = self.incidence_girth()?;
        let q = girth / 2;
        let inc = self.incidence();
        let mut best: Option<Vec<usize>> = None;
        for start in 0..self.n {
            let mut seq = vec![start];
            let mut used_v = vec![false; self.n];
            let mut used_e = vec![false; self.m()];
            used_v[start] = true;
            self.cycle_dfs(&inc, q, start, &mut seq, &mut used_v, &mut used_e, &mut best);
            if best.is_some() {
                // Later starts cannot produce a smaller leading vertex.
                break;
            }
        }
        best.map(|seq| Cycle {
            vertices: seq.iter().step_by(2).copied().collect(),
            edges: seq.iter().skip(1).step_by(2).copied().collect(),
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn cycle_dfs(
        &self,
        inc: &[Vec<usize>],
        q: usize,
        start: usize,
        seq: &mut Vec<usize>,
        used_v: &mut [bool],
        used_e: &mut [bool],
        best: &mut Option<Vec<usize>>,
    ) {
        let cur = *seq.last().unwrap();
        let edges_used = seq.len() / 2;
        for &ei in &inc[cur] {
            if used_e[ei] {
                continue;
            }
            if edges_used + 1 == q {
                if self.edges[ei].contains(&start) {
                    seq.push(ei);
                    if best.as_ref().is_none_or(|b| seq.as_slice() < b.as_slice()) {
                        *best = Some(seq.clone());
                    }
                    seq.pop();
                }
                continue;
            }
            used_e[ei] = true;
            seq.push(ei);
            for &w in &self.edges[ei] {
                if used_v[w] || w < start {
                    continue;
                }
                used_v[w] = true;
                seq.push(w);
                self.cycle_dfs(inc, q, start, seq, used_v, used_e, best);
                seq.pop();
                used_v[w] = false;
            }
            seq.pop();
            used_e[ei] = false;
        }
    }

    /// Girth of the bipartite incidence graph (always even), if any cycle.
    fn incidence_girth(&self) -> Option<usize> {
        let n = self.n;
        let total = n + self.m();
        let mut adj = vec![Vec::new(); total];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                adj[v].push(n + i);
                adj[n + i].push(v);
            }
        }
        let mut girth: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; total];
            let mut parent = vec![usize::MAX; total];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        girth = Some(girth.map_or(len, |g| g.min(len)));
                    }
                }
            }
        }
        girth
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} n={} [", self.k, self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{")?;
            for (j, v) in e.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "]")
    }
}

/// A cycle `vertices[0] edges[0] vertices[1] ... vertices[q-1] edges[q-1] vertices[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub connected: bool,
    pub cyclomatic_r: i64,
    pub cycle: Option<Cycle>,
    pub degree_min: usize,
    pub degree_max: usize,
    pub pendant_edges: Vec<usize>,
    pub pp_vertices: Vec<usize>,
}
