//! Edge-moving and edge-switching surgery.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};
use crate::spectral::EigenPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("{edges} edges but {from} from-vertices")]
    LengthMismatch { edges: usize, from: usize },
    #[error("edge index {0} is out of range")]
    NoSuchEdge(usize),
    #[error("edge {0} is listed more than once")]
    RepeatedEdge(usize),
    #[error("vertex {0} is out of range")]
    NoSuchVertex(usize),
    #[error("from-vertex {vertex} is not on edge {edge}")]
    FromNotOnEdge { edge: usize, vertex: usize },
    #[error("target vertex {vertex} already lies on edge {edge}")]
    TargetOnEdge { edge: usize, vertex: usize },
    #[error("switch needs two distinct edges, got {0} twice")]
    SameEdge(usize),
    #[error("switch subsets must have equal size in 1..={max}, got {u1} and {v1}")]
    SubsetSize { u1: usize, v1: usize, max: usize },
    #[error("vertex {vertex} is not on edge {edge}")]
    NotOnEdge { edge: usize, vertex: usize },
    #[error("vertex {0} is repeated in a switch subset")]
    RepeatedVertex(usize),
    #[error("switched edge would contain vertex {0} twice")]
    Collapsed(usize),
    #[error("result is not a valid hypergraph: {0}")]
    Invalid(#[from] HypergraphError),
}

/// Move edges `e_i` off `v_i` onto `u`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MoveSpec {
    pub edges: Vec<usize>,
    pub from: Vec<usize>,
    pub to: usize,
}

/// Exchange `U1 ⊆ e` with `V1 ⊆ f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchSpec {
    pub e: usize,
    pub f: usize,
    pub u1: Vec<usize>,
    pub v1: Vec<usize>,
}

impl SwitchSpec {
    /// The switch that undoes this one on the result, given the indices of
    /// `e'` and `f'` there.
    pub fn reversed(&self, e_new: usize, f_new: usize) -> SwitchSpec {
        SwitchSpec { e: e_new, f: f_new, u1: self.v1.clone(), v1: self.u1.clone() }
    }
}

fn rebuild(h: &Hypergraph, edges: Vec<Vec<usize>>) -> Result<Hypergraph, TransformError> {
    Ok(Hypergraph::from_unsorted(h.k(), h.n(), edges)?)
}

/// Replaces each `e_i` by `(e_i \ {v_i}) ∪ {u}`. Rejects results with a
/// duplicate edge or an isolated vertex.
pub fn move_edges(h: &Hypergraph, spec: &MoveSpec) -> Result<Hypergraph, TransformError> {
    if spec.edges.len() != spec.from.len() {
        return Err(TransformError::LengthMismatch { edges: spec.edges.len(), from: spec.from.len() });
    }
    if spec.to >= h.n() {
        return Err(TransformError::NoSuchVertex(spec.to));
    }
    let mut edges = h.edges().to_vec();
    let mut seen = vec![false; h.m()];
    for (&i, &v) in spec.edges.iter().zip(&spec.from) {
        if i >= h.m() {
            return Err(TransformError::NoSuchEdge(i));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(TransformError::RepeatedEdge(i));
        }
        let e = h.edge(i);
        if !e.contains(&v) {
            return Err(TransformError::FromNotOnEdge { edge: i, vertex: v });
        }
        if e.contains(&spec.to) {
            return Err(TransformError::TargetOnEdge { edge: i, vertex: spec.to });
        }
        for w in edges[i].iter_mut().filter(|w| **w == v) {
            *w = spec.to;
        }
    }
    rebuild(h, edges)
}

fn check_subset(h: &Hypergraph, edge: usize, subset: &[usize]) -> Result<(), TransformError> {
    let e = h.edge(edge);
    for (i, &v) in subset.iter().enumerate() {
        if !e.contains(&v) {
            return Err(TransformError::NotOnEdge { edge, vertex: v });
        }
        if subset[..i].contains(&v) {
            return Err(TransformError::RepeatedVertex(v));
        }
    }
    Ok(())
}

/// The edge pair `(e', f')` produced by a switch, unsorted.
fn switched(h: &Hypergraph, spec: &SwitchSpec) -> Result<(Vec<usize>, Vec<usize>), TransformError> {
    for &i in &[spec.e, spec.f] {
        if i >= h.m() {
            return Err(TransformError::NoSuchEdge(i));
        }
    }
    if spec.e == spec.f {
        return Err(TransformError::SameEdge(spec.e));
    }
    let max = h.k() - 1;
    if spec.u1.len() != spec.v1.len() || spec.u1.is_empty() || spec.u1.len() > max {
        return Err(TransformError::SubsetSize { u1: spec.u1.len(), v1: spec.v1.len(), max });
    }
    check_subset(h, spec.e, &spec.u1)?;
    check_subset(h, spec.f, &spec.v1)?;
    let exchange = |edge: &[usize], out: &[usize], inn: &[usize]| {
        let mut kept: Vec<usize> = edge.iter().copied().filter(|v| !out.contains(v)).collect();
        for &v in inn {
            if kept.contains(&v) {
                return Err(TransformError::Collapsed(v));
            }
            kept.push(v);
        }
        Ok(kept)
    };
    let e_new = exchange(h.edge(spec.e), &spec.u1, &spec.v1)?;
    let f_new = exchange(h.edge(spec.f), &spec.v1, &spec.u1)?;
    Ok((e_new, f_new))
}

/// Replaces `e` by `(e \ U1) ∪ V1` and `f` by `(f \ V1) ∪ U1`.
pub fn switch_edges(h: &Hypergraph, spec: &SwitchSpec) -> Result<Hypergraph, TransformError> {
    let (e_new, f_new) = switched(h, spec)?;
    let mut edges = h.edges().to_vec();
    edges[spec.e] = e_new;
    edges[spec.f] = f_new;
    rebuild(h, edges)
}

/// `x_u >= max x_{v_i}` with slack above `10 tol`. An empty move is never
/// strict.
pub fn check_move_hypothesis(h: &Hypergraph, spec: &MoveSpec, pair: &EigenPair, tol: f64) -> bool {
    let x = &pair.x;
    if x.len() != h.n() || spec.to >= x.len() || spec.from.iter().any(|&v| v >= x.len()) {
        return false;
    }
    match spec.from.iter().map(|&v| x[v]).reduce(f64::max) {
        Some(top) => x[spec.to] - top > 10.0 * tol,
        None => false,
    }
}

/// Outcome of testing the switch inequalities at an eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwitchHypothesis {
    /// `x_{U1} - x_{V1}`
    pub first: f64,
    /// `x_{V2} - x_{U2}`
    pub second: f64,
    /// Both differences are `>= -10 tol`, at least one is `> 10 tol`, and the
    /// switch changes the edge set.
    pub holds: bool,
}

/// Evaluates `x_{U1} >= x_{V1}` and `x_{U2} <= x_{V2}` where `U2 = e \ U1`
/// and `V2 = f \ V1`.
pub fn check_switch_hypothesis(
    h: &Hypergraph,
    spec: &SwitchSpec,
    pair: &EigenPair,
    tol: f64,
) -> Result<SwitchHypothesis, TransformError> {
    let (mut e_new, _) = switched(h, spec)?;
    e_new.sort_unstable();
    let identity = e_new == h.edge(spec.e) || e_new == h.edge(spec.f);
    let x = &pair.x;
    let prod = |vs: &mut dyn Iterator<Item = usize>| vs.map(|v| x[v]).product::<f64>();
    let e = h.edge(spec.e);
    let f = h.edge(spec.f);
    let x_u1 = prod(&mut spec.u1.iter().copied());
    let x_v1 = prod(&mut spec.v1.iter().copied());
    let x_u2 = prod(&mut e.iter().copied().filter(|v| !spec.u1.contains(v)));
    let x_v2 = prod(&mut f.iter().copied().filter(|v| !spec.v1.contains(v)));
    let first = x_u1 - x_v1;
    let second = x_v2 - x_u2;
    let margin = 10.0 * tol;
    let holds = !identity && first >= -margin && second >= -margin && (first > margin || second > margin);
    Ok(SwitchHypothesis { first, second, holds })
}
