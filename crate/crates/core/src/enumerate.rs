//! Isomorph-free generation of connected unicyclic hypergraphs and
//! supertrees.
//!
//! Every unicyclic hypergraph is its unique cycle with supertrees hanging
//! off it, so peeling pendant edges one at a time reduces it to a bare
//! `q`-cycle. Generation runs that in reverse: level `j` holds every class
//! with `j` edges, built from the bare `j`-cycle plus every class of level
//! `j - 1` extended by one edge made of an existing anchor and `k - 1`
//! fresh vertices. Classes are deduplicated by canonical key.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalKey};
use crate::hypergraph::Hypergraph;

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Unicyclic,
    Supertree,
}

impl std::str::FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unicyclic" => Ok(Shape::Unicyclic),
            "supertree" => Ok(Shape::Supertree),
            other => Err(format!("unknown shape `{other}` (expected unicyclic|supertree)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub k: usize,
    pub m: usize,
    pub shape: Shape,
    /// Longest seed cycle; `None` means `m`.
    pub max_cycle_len: Option<usize>,
    /// Upper bound on distinct classes held across all levels.
    pub cap: usize,
}

impl GenSpec {
    pub fn new(k: usize, m: usize, shape: Shape) -> Self {
        GenSpec { k, m, shape, max_cycle_len: None, cap: DEFAULT_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("k = {0} is below 3")]
    UniformityTooSmall(usize),
    #[error("m = {m} is too small for shape {shape:?}")]
    TooFewEdges { m: usize, shape: Shape },
    #[error("instance cap {cap} exceeded after {partial} classes")]
    CapExceeded { cap: usize, partial: usize },
}

/// The bare `q`-cycle. For `q = 2` the edges share vertices `0` and `1`;
/// otherwise edge `i` holds cycle vertices `i` and `i + 1 mod q` plus `k - 2`
/// private vertices.
pub fn cycle(k: usize, q: usize) -> Hypergraph {
    let edges = if q == 2 {
        vec![(0..k).collect(), [vec![0, 1], (k..2 * k - 2).collect()].concat()]
    } else {
        let mut next = q;
        (0..q)
            .map(|i| {
                let mut e = vec![i, (i + 1) % q];
                e.extend(next..next + k - 2);
                next += k - 2;
                e
            })
            .collect()
    };
    Hypergraph::from_unsorted(k, q * (k - 1), edges).expect("cycle is valid")
}

/// `h` plus the edge `{anchor, n, ..., n + k - 2}`.
pub fn attach_pendant(h: &Hypergraph, anchor: usize) -> Hypergraph {
    let (k, n) = (h.k(), h.n());
    let mut edges = h.edges().to_vec();
    edges.push(std::iter::once(anchor).chain(n..n + k - 1).collect());
    Hypergraph::from_unsorted(k, n + k - 1, edges).expect("fresh vertices keep the edge list simple")
}

struct Level {
    classes: BTreeMap<CanonicalKey, (Hypergraph, Vec<usize>)>,
}

impl Level {
    fn new() -> Self {
        Level { classes: BTreeMap::new() }
    }

    /// Inserts the class of `h`; returns whether it was new.
    fn insert(&mut self, h: &Hypergraph) -> bool {
        let form = canonical_form(h);
        if self.classes.contains_key(&form.key) {
            return false;
        }
        let anchors = form.orbits().into_iter().map(|o| form.labeling[o[0]]).collect();
        self.classes.insert(form.key.clone(), (form.graph(h), anchors));
        true
    }
}

/// Canonical representatives of every class, in canonical key order.
pub fn generate(spec: &GenSpec) -> Result<Vec<Hypergraph>, EnumerateError> {
    let GenSpec { k, m, shape, .. } = *spec;
    if k < 3 {
        return Err(EnumerateError::UniformityTooSmall(k));
    }
    let min_m = match shape {
        Shape::Unicyclic => 2,
        Shape::Supertree => 1,
    };
    if m < min_m {
        return Err(EnumerateError::TooFewEdges { m, shape });
    }
    let max_q = spec.max_cycle_len.unwrap_or(m).min(m);
    let mut held = 0usize;
    let mut level = Level::new();
    for j in min_m..=m {
        let mut next = Level::new();
        for (h, anchors) in level.classes.values() {
            for &a in anchors {
                if next.insert(&attach_pendant(h, a)) {
                    held += 1;
                }
            }
            if held > spec.cap {
                return Err(EnumerateError::CapExceeded { cap: spec.cap, partial: held });
            }
        }
        let seed = match shape {
            Shape::Unicyclic if j <= max_q => Some(cycle(k, j)),
            Shape::Supertree if j == 1 => Some(Hypergraph::new(k, k, vec![(0..k).collect()]).expect("single edge")),
            _ => None,
        };
        if let Some(seed) = seed {
            if next.insert(&seed) {
                held += 1;
            }
        }
        if held > spec.cap {
            return Err(EnumerateError::CapExceeded { cap: spec.cap, partial: held });
        }
        level = next;
    }
    Ok(level.classes.into_values().map(|(h, _)| h).collect())
}

pub fn count(spec: &GenSpec) -> Result<usize, EnumerateError> {
    generate(spec).map(|v| v.len())
}
