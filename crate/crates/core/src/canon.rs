//! Canonical labelling and automorphism orbits.
//!
//! Individualisation-refinement over ordered vertex partitions. Refinement
//! is colour refinement on the vertex/edge incidence structure; the search
//! tree branches on the first smallest non-singleton cell. Every leaf yields
//! a relabelled edge list and the lexicographically least one is the
//! canonical form. Two leaves with equal edge lists give an automorphism,
//! which both prunes sibling branches and feeds the orbit partition.

use std::collections::HashMap;
use std::fmt;

use crate::hypergraph::Hypergraph;

/// Isomorphism-class fingerprint: `k`, `n`, `m` and the canonical edge list,
/// each number as a big-endian `u16`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(hex: &str) -> Option<Self> {
        if !hex.len().is_multiple_of(2) {
            return None;
        }
        (0..hex.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(hex.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalKey)
    }

    fn encode(k: usize, n: usize, edges: &[Vec<usize>]) -> Self {
        let mut bytes = Vec::with_capacity(6 + 2 * k * edges.len());
        for x in [k, n, edges.len()] {
            bytes.extend_from_slice(&(x as u16).to_be_bytes());
        }
        for e in edges {
            for &v in e {
                bytes.extend_from_slice(&(v as u16).to_be_bytes());
            }
        }
        CanonicalKey(bytes)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl serde::Serialize for CanonicalKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> serde::Deserialize<'de> for CanonicalKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalKey::from_hex(&s).ok_or_else(|| serde::de::Error::custom("invalid hex key"))
    }
}

/// Result of a full canonicalisation search.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// `labeling[v]` is the canonical position of vertex `v`.
    pub labeling: Vec<usize>,
    /// Automorphism generators discovered during the search, as images
    /// `g[v]`.
    pub generators: Vec<Vec<usize>>,
}

impl CanonicalForm {
    /// The hypergraph relabelled into canonical position.
    pub fn graph(&self, h: &Hypergraph) -> Hypergraph {
        h.relabel(&self.labeling)
    }

    /// Orbits of the group generated by the discovered automorphisms, each
    /// sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.labeling.len();
        let mut uf = UnionFind::new(n);
        for g in &self.generators {
            for (v, &w) in g.iter().enumerate() {
                uf.union(v, w);
            }
        }
        uf.blocks()
    }
}

pub fn canonical_key(h: &Hypergraph) -> CanonicalKey {
    canonical_form(h).key
}

pub fn automorphism_orbits(h: &Hypergraph) -> Vec<Vec<usize>> {
    canonical_form(h).orbits()
}

pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.k() == b.k() && a.n() == b.n() && a.m() == b.m() && canonical_key(a) == canonical_key(b)
}

pub fn canonical_form(h: &Hypergraph) -> CanonicalForm {
    let mut search = Search::new(h);
    let root = search.refine(Partition::unit(h.n()));
    search.descend(root, &mut Vec::new());
    let (cert, labeling) = search.best.take().expect("search visits at least one leaf");
    CanonicalForm { key: CanonicalKey::encode(h.k(), h.n(), &cert), labeling, generators: search.generators }
}

/// Ordered partition: `cell[v]` is the start position of the cell holding
/// `v`; `size[start]` is that cell's size. A singleton's start never moves
/// once created.
#[derive(Clone, Debug)]
struct Partition {
    cell: Vec<usize>,
    size: Vec<usize>,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut size = vec![0; n];
        if n > 0 {
            size[0] = n;
        }
        Partition { cell: vec![0; n], size }
    }

    fn is_discrete(&self) -> bool {
        self.cell.iter().all(|&c| self.size[c] == 1)
    }

    /// First cell of minimum size among the non-singleton cells.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (start, &sz) in self.size.iter().enumerate() {
            if sz > 1 && best.is_none_or(|(s, _)| sz < s) {
                best = Some((sz, start));
            }
        }
        best.map(|(_, start)| start)
    }

    fn members(&self, start: usize) -> Vec<usize> {
        (0..self.cell.len()).filter(|&v| self.cell[v] == start).collect()
    }

    fn individualize(&self, v: usize) -> Self {
        let mut p = self.clone();
        let start = self.cell[v];
        let sz = self.size[start];
        for w in 0..p.cell.len() {
            if p.cell[w] == start && w != v {
                p.cell[w] = start + 1;
            }
        }
        p.size[start] = 1;
        p.size[start + 1] = sz - 1;
        p
    }
}

enum Outcome {
    Done,
    /// Abandon the current subtree and resume at the given depth.
    JumpTo(usize),
}

type Certificate = Vec<Vec<usize>>;

struct Search<'a> {
    h: &'a Hypergraph,
    incidence: Vec<Vec<usize>>,
    best: Option<(Vec<Vec<usize>>, Vec<usize>)>,
    /// Leaf certificate -> (labelling, individualised path).
    leaves: HashMap<Certificate, (Vec<usize>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        Search { h, incidence: h.incidence(), best: None, leaves: HashMap::new(), generators: Vec::new() }
    }

    /// Splits cells by the multiset of incident-edge colour signatures until
    /// stable. Signatures only mention cell positions, so the result is
    /// equivariant under relabelling.
    fn refine(&self, mut p: Partition) -> Partition {
        let n = self.h.n();
        loop {
            let edge_sig: Vec<Vec<usize>> = self
                .h
                .edges()
                .iter()
                .map(|e| {
                    let mut s: Vec<usize> = e.iter().map(|&v| p.cell[v]).collect();
                    s.sort_unstable();
                    s
                })
                .collect();
            let vertex_sig: Vec<Vec<&Vec<usize>>> = (0..n)
                .map(|v| {
                    let mut s: Vec<&Vec<usize>> = self.incidence[v].iter().map(|&e| &edge_sig[e]).collect();
                    s.sort_unstable();
                    s
                })
                .collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| (p.cell[a], &vertex_sig[a]).cmp(&(p.cell[b], &vertex_sig[b])));
            let mut next = Partition { cell: vec![0; n], size: vec![0; n] };
            let mut split = false;
            let mut i = 0;
            while i < n {
                let start_cell = p.cell[order[i]];
                let mut pos = start_cell;
                let mut j = i;
                while j < n && p.cell[order[j]] == start_cell {
                    let mut l = j;
                    while l < n && p.cell[order[l]] == start_cell && vertex_sig[order[l]] == vertex_sig[order[j]] {
                        next.cell[order[l]] = pos;
                        l += 1;
                    }
                    next.size[pos] = l - j;
                    if pos != start_cell {
                        split = true;
                    }
                    pos += l - j;
                    j = l;
                }
                i = j;
            }
            p = next;
            if !split {
                return p;
            }
        }
    }

    fn certificate(&self, labeling: &[usize]) -> Vec<Vec<usize>> {
        let mut edges: Vec<Vec<usize>> = self
            .h
            .edges()
            .iter()
            .map(|e| {
                let mut r: Vec<usize> = e.iter().map(|&v| labeling[v]).collect();
                r.sort_unstable();
                r
            })
            .collect();
        edges.sort();
        edges
    }

    /// Orbit representatives test: is `w` equivalent to an explored child
    /// under the generators that fix `path` pointwise?
    fn pruned(&self, path: &[usize], explored: &[usize], w: usize) -> bool {
        if explored.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.h.n());
        for g in &self.generators {
            if path.iter().all(|&v| g[v] == v) {
                for (v, &img) in g.iter().enumerate() {
                    uf.union(v, img);
                }
            }
        }
        explored.iter().any(|&x| uf.find(x) == uf.find(w))
    }

    fn descend(&mut self, p: Partition, path: &mut Vec<usize>) -> Outcome {
        let Some(target) = p.target_cell() else {
            debug_assert!(p.is_discrete());
            return self.leaf(p.cell, path);
        };
        let depth = path.len();
        let mut explored = Vec::new();
        for w in p.members(target) {
            if self.pruned(path, &explored, w) {
                continue;
            }
            path.push(w);
            let child = self.refine(p.individualize(w));
            let outcome = self.descend(child, path);
            path.pop();
            explored.push(w);
            if let Outcome::JumpTo(d) = outcome {
                if d < depth {
                    return Outcome::JumpTo(d);
                }
            }
        }
        Outcome::Done
    }

    fn leaf(&mut self, labeling: Vec<usize>, path: &[usize]) -> Outcome {
        let cert = self.certificate(&labeling);
        if let Some((other, other_path)) = self.leaves.get(&cert) {
            // other^-1 . labeling maps this leaf onto the stored one.
            let n = labeling.len();
            let mut inv_other = vec![0; n];
            for (v, &pos) in other.iter().enumerate() {
                inv_other[pos] = v;
            }
            let gen: Vec<usize> = (0..n).map(|v| inv_other[labeling[v]]).collect();
            let common = path.iter().zip(other_path).take_while(|(a, b)| a == b).count();
            if gen.iter().enumerate().any(|(v, &g)| v != g) {
                self.generators.push(gen);
            }
            return Outcome::JumpTo(common);
        }
        if self.best.as_ref().is_none_or(|(b, _)| cert < *b) {
            self.best = Some((cert.clone(), labeling.clone()));
        }
        self.leaves.insert(cert, (labeling, path.to_vec()));
        Outcome::Done
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.find(v);
            by_root[r].push(v);
        }
        by_root.into_iter().filter(|b| !b.is_empty()).collect()
    }
}
