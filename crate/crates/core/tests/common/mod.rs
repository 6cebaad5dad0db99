//! Brute-force oracles and instance generators shared by the integration
//! tests. Nothing here calls into the canonical labelling, the matching
//! search or the enumerator.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use hyperrho::Hypergraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2024;

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn hg(k: usize, n: usize, edges: &[&[usize]]) -> Hypergraph {
    Hypergraph::from_unsorted(k, n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
}

/// Random connected k-uniform hypergraph with `m` edges. Each new edge
/// reuses between one and `max_reuse` existing vertices and takes the rest
/// fresh, so cycles appear whenever more than one vertex is reused.
pub fn random_connected(rng: &mut impl Rng, k: usize, m: usize, max_reuse: usize) -> Hypergraph {
    loop {
        let mut n = k;
        let mut edges: Vec<Vec<usize>> = vec![(0..k).collect()];
        let mut seen: HashSet<Vec<usize>> = edges.iter().cloned().collect();
        let mut stuck = false;
        while edges.len() < m {
            let reuse = rng.gen_range(1..=max_reuse.min(k).min(n));
            let mut pool: Vec<usize> = (0..n).collect();
            pool.shuffle(rng);
            let mut e: Vec<usize> = pool[..reuse].to_vec();
            e.extend(n..n + k - reuse);
            e.sort_unstable();
            if seen.insert(e.clone()) {
                n += k - reuse;
                edges.push(e);
            } else if seen.len() > 1000 {
                stuck = true;
                break;
            }
        }
        if !stuck {
            return Hypergraph::from_unsorted(k, n, edges).unwrap();
        }
    }
}

/// Random vertex relabelling of `h`.
pub fn shuffled(rng: &mut impl Rng, h: &Hypergraph) -> Hypergraph {
    let mut perm: Vec<usize> = (0..h.n()).collect();
    perm.shuffle(rng);
    h.relabel(&perm)
}

fn edge_set(h: &Hypergraph) -> BTreeSet<Vec<usize>> {
    h.edges().iter().cloned().collect()
}

fn image(e: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
    out.sort_unstable();
    out
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm). Stops early
/// when `f` returns `true`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    if f(&perm) {
        return true;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if f(&perm) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// Isomorphism by trying every vertex bijection.
pub fn brute_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.k() != b.k() || a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let target = edge_set(b);
    for_each_permutation(a.n(), |perm| a.edges().iter().all(|e| target.contains(&image(e, perm))))
}

/// Every automorphism of `h`, as vertex images.
pub fn brute_automorphisms(h: &Hypergraph) -> Vec<Vec<usize>> {
    let edges = edge_set(h);
    let mut out = Vec::new();
    for_each_permutation(h.n(), |perm| {
        if h.edges().iter().all(|e| edges.contains(&image(e, perm))) {
            out.push(perm.to_vec());
        }
        false
    });
    out
}

/// Orbits of the full automorphism group, each sorted, ordered by their
/// smallest member.
pub fn brute_orbits(h: &Hypergraph) -> Vec<Vec<usize>> {
    let autos = brute_automorphisms(h);
    let mut assigned = vec![false; h.n()];
    let mut orbits = Vec::new();
    for v in 0..h.n() {
        if assigned[v] {
            continue;
        }
        let orbit: BTreeSet<usize> = autos.iter().map(|g| g[v]).collect();
        for &w in &orbit {
            assigned[w] = true;
        }
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

/// Maximum matching by checking all `2^m` edge subsets.
pub fn brute_alpha(h: &Hypergraph) -> usize {
    let m = h.m();
    assert!(m <= 20, "brute force is exponential in m");
    let masks: Vec<u128> = h.edges().iter().map(|e| e.iter().fold(0u128, |acc, &v| acc | 1 << v)).collect();
    let mut best = 0;
    for subset in 0u32..(1 << m) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut used = 0u128;
        let mut ok = true;
        for (i, &mask) in masks.iter().enumerate() {
            if subset >> i & 1 == 1 {
                if used & mask != 0 {
                    ok = false;
                    break;
                }
                used |= mask;
            }
        }
        if ok {
            best = size;
        }
    }
    best
}

/// Connectivity by union-find over edges.
pub fn brute_connected(n: usize, edges: &[Vec<usize>]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while p[r] != r {
            r = p[r];
        }
        p[v] = r;
        r
    }
    for e in edges {
        for w in e.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every labelled connected hypergraph with `m` edges on exactly
/// `(k-1) m` covered vertices, which is the unicyclic case. Calls `f` on each.
pub fn for_each_labeled_unicyclic(k: usize, m: usize, mut f: impl FnMut(&[Vec<usize>])) {
    let n = (k - 1) * m;
    let all = k_subsets(n, k);
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    fn rec(
        all: &[Vec<usize>],
        start: usize,
        m: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        if chosen.len() == m {
            let edges: Vec<Vec<usize>> = chosen.iter().map(|&i| all[i].clone()).collect();
            let mut covered = vec![false; n];
            edges.iter().flatten().for_each(|&v| covered[v] = true);
            if covered.iter().all(|&c| c) && brute_connected(n, &edges) {
                f(&edges);
            }
            return;
        }
        for i in start..all.len() {
            chosen.push(i);
            rec(all, i + 1, m, n, chosen, f);
            chosen.pop();
        }
    }
    rec(&all, 0, m, n, &mut chosen, &mut f);
}

/// Isomorphism classes of labelled unicyclic hypergraphs, one
/// representative each, deduplicated by brute-force isomorphism.
pub fn labeled_unicyclic_classes(k: usize, m: usize) -> Vec<Hypergraph> {
    let n = (k - 1) * m;
    let mut classes: Vec<Hypergraph> = Vec::new();
    for_each_labeled_unicyclic(k, m, |edges| {
        let h = Hypergraph::from_unsorted(k, n, edges.to_vec()).unwrap();
        if !classes.iter().any(|c| brute_isomorphic(c, &h)) {
            classes.push(h);
        }
    });
    classes
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All cycles as alternating vertex/edge sequences found by trying every
/// ordered sequence of distinct edges and distinct linking vertices.
/// Returns the set of cycle lengths found.
pub fn brute_cycle_lengths(h: &Hypergraph) -> BTreeSet<usize> {
    let mut lengths = BTreeSet::new();
    fn rec(
        h: &Hypergraph,
        start_v: usize,
        cur_v: usize,
        used_e: &mut Vec<usize>,
        used_v: &mut Vec<usize>,
        out: &mut BTreeSet<usize>,
    ) {
        for ei in 0..h.m() {
            if used_e.contains(&ei) || !h.edge(ei).contains(&cur_v) {
                continue;
            }
            used_e.push(ei);
            if used_e.len() >= 2 && h.edge(ei).contains(&start_v) {
                out.insert(used_e.len());
            }
            for &w in h.edge(ei) {
                if w == cur_v || used_v.contains(&w) {
                    continue;
                }
                used_v.push(w);
                rec(h, start_v, w, used_e, used_v, out);
                used_v.pop();
            }
            used_e.pop();
        }
    }
    for v in 0..h.n() {
        rec(h, v, v, &mut Vec::new(), &mut vec![v], &mut lengths);
    }
    lengths
}

/// A random edge move onto a uniformly chosen target, or `None` when the
/// draw is not a valid move with a connected result.
pub fn random_move(rng: &mut impl Rng, h: &Hypergraph) -> Option<(hyperrho::MoveSpec, Hypergraph)> {
    let to = rng.gen_range(0..h.n());
    let candidates: Vec<usize> = (0..h.m()).filter(|&i| !h.edge(i).contains(&to)).collect();
    if candidates.is_empty() {
        return None;
    }
    let r = rng.gen_range(1..=candidates.len().min(3));
    let edges: Vec<usize> = candidates.choose_multiple(rng, r).copied().collect();
    let from: Vec<usize> = edges.iter().map(|&i| *h.edge(i).choose(rng).unwrap()).collect();
    let spec = hyperrho::MoveSpec { edges, from, to };
    let g = hyperrho::move_edges(h, &spec).ok()?;
    g.is_connected().then_some((spec, g))
}

/// A random switch between two edges with disjoint exchanged sets, or
/// `None` when the draw is invalid or disconnects the graph.
pub fn random_switch(rng: &mut impl Rng, h: &Hypergraph) -> Option<(hyperrho::SwitchSpec, Hypergraph)> {
    if h.m() < 2 {
        return None;
    }
    let pair = rand::seq::index::sample(rng, h.m(), 2);
    let (e, f) = (pair.index(0), pair.index(1));
    let r = rng.gen_range(1..h.k());
    let u1: Vec<usize> = h.edge(e).choose_multiple(rng, r).copied().collect();
    let v1: Vec<usize> = h.edge(f).choose_multiple(rng, r).copied().collect();
    if u1.iter().any(|v| v1.contains(v)) {
        return None;
    }
    let spec = hyperrho::SwitchSpec { e, f, u1, v1 };
    let g = hyperrho::switch_edges(h, &spec).ok()?;
    g.is_connected().then_some((spec, g))
}
