//! Exact maximum matching (maximum set packing of edges).

use serde::{Deserialize, Serialize};

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    pub alpha: usize,
    /// Edge indices of the lexicographically least maximum matching.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassMode {
    /// `alpha >= z`
    AtLeast,
    /// `alpha == z`
    Exact,
}

impl std::fmt::Display for ClassMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClassMode::AtLeast => "atleast",
            ClassMode::Exact => "exact",
        })
    }
}

impl std::str::FromStr for ClassMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "atleast" => Ok(ClassMode::AtLeast),
            "exact" => Ok(ClassMode::Exact),
            other => Err(format!("unknown mode `{other}` (expected atleast|exact)")),
        }
    }
}

/// Vertex set as a bitmask over `u64` words.
#[derive(Clone, Debug)]
struct VertexSet(Vec<u64>);

impl VertexSet {
    fn empty(n: usize) -> Self {
        VertexSet(vec![0; n.div_ceil(64)])
    }

    fn from_edge(n: usize, e: &[usize]) -> Self {
        let mut s = Self::empty(n);
        for &v in e {
            s.0[v / 64] |= 1 << (v % 64);
        }
        s
    }

    fn disjoint(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == 0)
    }

    fn insert_all(&mut self, other: &Self) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a |= b);
    }

    fn remove_all(&mut self, other: &Self) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a &= !b);
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Packer {
    n: usize,
    k: usize,
    masks: Vec<VertexSet>,
    best: usize,
}

impl Packer {
    /// Largest packing among `order[pos..]` disjoint from `used`.
    fn search(&mut self, order: &[usize], pos: usize, used: &mut VertexSet, size: usize) {
        if size > self.best {
            self.best = size;
        }
        let candidates: Vec<usize> = order[pos..].iter().copied().filter(|&e| self.masks[e].disjoint(used)).collect();
        let free = self.n - used.len();
        let bound = size + candidates.len().min(free / self.k);
        if bound <= self.best {
            return;
        }
        for (i, &e) in candidates.iter().enumerate() {
            if size + (candidates.len() - i).min(free / self.k) <= self.best {
                return;
            }
            let mask = self.masks[e].clone();
            used.insert_all(&mask);
            let rest: Vec<usize> = candidates[i + 1..].to_vec();
            self.search(&rest, 0, used, size + 1);
            used.remove_all(&mask);
        }
    }
}

/// Size of a maximum packing of `edges` (indices into `h`) avoiding `used`.
fn max_packing(h: &Hypergraph, masks: &[VertexSet], edges: &[usize], used: &VertexSet) -> usize {
    let deg = h.degrees();
    let mut order = edges.to_vec();
    // Low degree-sum edges first: they block the fewest alternatives.
    order.sort_by_key(|&e| (h.edge(e).iter().map(|&v| deg[v]).sum::<usize>(), e));
    let mut packer = Packer { n: h.n(), k: h.k(), masks: masks.to_vec(), best: 0 };
    let mut used = used.clone();
    packer.search(&order, 0, &mut used, 0);
    packer.best
}

/// Exact matching number with the lexicographically least maximum matching.
pub fn matching_number(h: &Hypergraph) -> MatchingResult {
    let n = h.n();
    let masks: Vec<VertexSet> = h.edges().iter().map(|e| VertexSet::from_edge(n, e)).collect();
    let all: Vec<usize> = (0..h.m()).collect();
    let alpha = max_packing(h, &masks, &all, &VertexSet::empty(n));

    let mut used = VertexSet::empty(n);
    let mut witness = Vec::with_capacity(alpha);
    for e in 0..h.m() {
        if witness.len() == alpha {
            break;
        }
        if !masks[e].disjoint(&used) {
            continue;
        }
        let mut trial = used.clone();
        trial.insert_all(&masks[e]);
        let later: Vec<usize> = (e + 1..h.m()).filter(|&f| masks[f].disjoint(&trial)).collect();
        if witness.len() + 1 + max_packing(h, &masks, &later, &trial) == alpha {
            witness.push(e);
            used = trial;
        }
    }
    MatchingResult { alpha, witness }
}

/// Membership in the unicyclic class with matching number `>= z` or `== z`.
pub fn class_filter(h: &Hypergraph, z: usize, mode: ClassMode) -> bool {
    if !h.is_unicyclic() {
        return false;
    }
    let alpha = matching_number(h).alpha;
    match mode {
        ClassMode::AtLeast => alpha >= z,
        ClassMode::Exact => alpha == z,
    }
}
