//! Spectral radius and principal eigenvector of the adjacency tensor.
//!
//! The adjacency tensor of a k-uniform hypergraph puts weight `1/(k-1)!` on
//! every ordering of every edge, so `(A x^{k-1})_v` collapses to a sum over
//! the edges through `v` of the product of the other `k-1` entries.
//!
//! The solver is a shifted power iteration on `A + shift * I` with
//! Collatz-Wielandt bracketing: at every step
//! `min_v y_v / x_v^{k-1} <= rho + shift <= max_v y_v / x_v^{k-1}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vector entry {index} is negative or not finite")]
    InvalidEntry { index: usize },
    #[error("vector is not normalised: sum x^k = {sum}")]
    NotNormalized { sum: f64 },
    #[error("adjacency tensor of a disconnected hypergraph is not weakly irreducible")]
    Disconnected,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("no convergence after {iterations} iterations; rho in [{lower}, {upper}]")]
    NotConverged { iterations: usize, lower: f64, upper: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Target width of the two-sided bracket on rho.
    pub tol: f64,
    pub max_iter: usize,
    /// Diagonal shift added to the tensor during iteration.
    pub shift: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tol: 1e-10, max_iter: 1_000_000, shift: 1.0 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SpectralError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(SpectralError::InvalidConfig("tol must be positive"));
        }
        if self.max_iter == 0 {
            return Err(SpectralError::InvalidConfig("max_iter must be at least 1"));
        }
        if !(self.shift >= 0.0 && self.shift.is_finite()) {
            return Err(SpectralError::InvalidConfig("shift must be nonnegative"));
        }
        Ok(())
    }
}

/// Spectral radius with its positive, `sum x^k = 1` normalised eigenvector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub rho: f64,
    pub x: Vec<f64>,
    /// `max_v |(A x^{k-1})_v - rho x_v^{k-1}|`.
    pub residual: f64,
    pub iterations: usize,
}

impl EigenPair {
    /// JSON with every float written to 17 significant digits.
    pub fn to_json(&self) -> String {
        let xs: Vec<String> = self.x.iter().map(|&v| fmt17(v)).collect();
        format!(
            "{{\"rho\": {}, \"x\": [{}], \"residual\": {}, \"iterations\": {}}}",
            fmt17(self.rho),
            xs.join(", "),
            fmt17(self.residual),
            self.iterations
        )
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn check_vector(h: &Hypergraph, x: &[f64]) -> Result<(), SpectralError> {
    if x.len() != h.n() {
        return Err(SpectralError::LengthMismatch { expected: h.n(), got: x.len() });
    }
    if let Some(index) = x.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(SpectralError::InvalidEntry { index });
    }
    Ok(())
}

/// Adds `prod_{u in e, u != v} x_u` into `y[v]` for every `v in e`, using
/// prefix/suffix products so no division by small entries occurs.
fn accumulate_edge(e: &[usize], x: &[f64], y: &mut [f64], scratch: &mut Vec<f64>) {
    let k = e.len();
    scratch.clear();
    scratch.resize(k, 1.0);
    let mut prefix = 1.0;
    for i in 0..k {
        scratch[i] = prefix;
        prefix *= x[e[i]];
    }
    let mut suffix = 1.0;
    for i in (0..k).rev() {
        y[e[i]] += scratch[i] * suffix;
        suffix *= x[e[i]];
    }
}

fn apply_unchecked(h: &Hypergraph, x: &[f64], y: &mut [f64]) {
    y.iter_mut().for_each(|v| *v = 0.0);
    let mut scratch = Vec::with_capacity(h.k());
    for e in h.edges() {
        accumulate_edge(e, x, y, &mut scratch);
    }
}

/// `A x^{k-1}` for the adjacency tensor of `h`.
pub fn apply_adjacency(h: &Hypergraph, x: &[f64]) -> Result<Vec<f64>, SpectralError> {
    check_vector(h, x)?;
    let mut y = vec![0.0; h.n()];
    apply_unchecked(h, x, &mut y);
    Ok(y)
}

/// `x^T A x^{k-1} = k * sum_e prod_{v in e} x_v` on the unit `l_k` sphere.
pub fn rayleigh_value(h: &Hypergraph, x: &[f64]) -> Result<f64, SpectralError> {
    check_vector(h, x)?;
    let k = h.k() as i32;
    let sum: f64 = x.iter().map(|v| v.powi(k)).sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(SpectralError::NotNormalized { sum });
    }
    let total: f64 = h.edges().iter().map(|e| e.iter().map(|&v| x[v]).product::<f64>()).sum();
    Ok(h.k() as f64 * total)
}

/// `max_v |(A x^{k-1})_v - rho x_v^{k-1}|`.
pub fn eigen_residual(h: &Hypergraph, rho: f64, x: &[f64]) -> Result<f64, SpectralError> {
    let y = apply_adjacency(h, x)?;
    let p = h.k() as i32 - 1;
    Ok(y.iter().zip(x).map(|(yv, xv)| (yv - rho * xv.powi(p)).abs()).fold(0.0, f64::max))
}

fn normalize(x: &mut [f64], k: usize) {
    let sum: f64 = x.iter().map(|v| v.powi(k as i32)).sum();
    let scale = sum.powf(-1.0 / k as f64);
    x.iter_mut().for_each(|v| *v *= scale);
}

/// Spectral radius and principal eigenvector of a connected hypergraph.
pub fn principal_eigenpair(h: &Hypergraph, cfg: &SolverConfig) -> Result<EigenPair, SpectralError> {
    cfg.validate()?;
    if !h.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    let n = h.n();
    let k = h.k();
    let p = k as i32 - 1;
    let root = 1.0 / (k as f64 - 1.0);
    let mut x = vec![(n as f64).powf(-1.0 / k as f64); n];
    let mut y = vec![0.0; n];
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for iter in 1..=cfg.max_iter {
        apply_unchecked(h, &x, &mut y);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for v in 0..n {
            let xp = x[v].powi(p);
            y[v] += cfg.shift * xp;
            let ratio = y[v] / xp;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        lower = lo - cfg.shift;
        upper = hi - cfg.shift;
        if hi - lo <= cfg.tol {
            let rho = 0.5 * (lower + upper);
            let residual = eigen_residual(h, rho, &x)?;
            return Ok(EigenPair { rho, x, residual, iterations: iter });
        }
        for v in 0..n {
            x[v] = y[v].powf(root);
        }
        normalize(&mut x, k);
    }
    Err(SpectralError::NotConverged { iterations: cfg.max_iter, lower, upper })
}

/// Per-class defects of a closed-form eigenvector identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    /// Vertices of the anchor edge that carry a pendant edge.
    pub attached: Vec<usize>,
    /// Vertices of the anchor edge with degree one.
    pub unattached: Vec<usize>,
    /// `max |x_v - formula|` over `attached`, if non-empty.
    pub attached_defect: Option<f64>,
    pub unattached_defect: Option<f64>,
}

impl IdentityReport {
    pub fn max_defect(&self) -> f64 {
        self.attached_defect.unwrap_or(0.0).max(self.unattached_defect.unwrap_or(0.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigurationError {
    #[error("edge index {0} out of range")]
    NoSuchEdge(usize),
    #[error("vertex {vertex} is not on edge {edge}")]
    NotOnEdge { vertex: usize, edge: usize },
    #[error("pendant count {t} outside the allowed range {min}..={max}")]
    PendantCountRange { t: usize, min: usize, max: usize },
    #[error("vertex {0} has the wrong degree for this configuration")]
    WrongDegree(usize),
    #[error("edge through vertex {0} is not a pendant edge hanging off the anchor edge")]
    NotPendant(usize),
    #[error("expected {expected} pendant-carrying vertices, found {found}")]
    PendantCountMismatch { expected: usize, found: usize },
    #[error("vertices {0} and {1} do not span a 2-cycle")]
    NotTwoCycle(usize, usize),
    #[error("configuration needs a connected hypergraph with at least two edges")]
    TooSmall,
    #[error("eigenvector length does not match the hypergraph")]
    LengthMismatch,
}

/// Splits the free vertices of `edge` into those carrying exactly one pendant
/// edge (degree 2) and those of degree 1.
fn classify_free_vertices(
    h: &Hypergraph,
    edge: usize,
    free: &[usize],
) -> Result<(Vec<usize>, Vec<usize>), ConfigurationError> {
    let deg = h.degrees();
    let inc = h.incidence();
    let mut attached = Vec::new();
    let mut unattached = Vec::new();
    for &v in free {
        match deg[v] {
            1 => unattached.push(v),
            2 => {
                let other = *inc[v].iter().find(|&&e| e != edge).unwrap();
                let ok = h.edge(other).iter().all(|&w| w == v || deg[w] == 1);
                if !ok {
                    return Err(ConfigurationError::NotPendant(v));
                }
                attached.push(v);
            }
            _ => return Err(ConfigurationError::WrongDegree(v)),
        }
    }
    Ok((attached, unattached))
}

fn max_defect(vs: &[usize], x: &[f64], target: f64) -> Option<f64> {
    vs.iter().map(|&v| (x[v] - target).abs()).reduce(f64::max)
}

fn check_base(h: &Hypergraph, edge: usize, pair: &EigenPair) -> Result<(), ConfigurationError> {
    if edge >= h.m() {
        return Err(ConfigurationError::NoSuchEdge(edge));
    }
    if pair.x.len() != h.n() {
        return Err(ConfigurationError::LengthMismatch);
    }
    if h.m() < 2 || !h.is_connected() {
        return Err(ConfigurationError::TooSmall);
    }
    Ok(())
}

/// Checks the eigenvector components on an edge `e` through `anchor_u` whose
/// other `k-1` vertices are either of degree one or carry exactly one
/// pendant edge (`pendant_count_t` of them).
///
/// With `phi_j = rho (1 - rho^{-k})^{j/k}`, a pendant-carrying vertex has
/// `x = x_u / phi_{t+1}` and a degree-one vertex has `x = x_u / phi_t`.
/// `t = k-1` reduces to `x_u / (rho - rho^{1-k})`, `t = 0` to `x_u / rho`.
pub fn check_closed_form_f(
    h: &Hypergraph,
    anchor_u: usize,
    e: usize,
    pendant_count_t: usize,
    pair: &EigenPair,
) -> Result<IdentityReport, ConfigurationError> {
    check_base(h, e, pair)?;
    let k = h.k();
    let t = pendant_count_t;
    if t > k - 1 {
        return Err(ConfigurationError::PendantCountRange { t, min: 0, max: k - 1 });
    }
    let edge = h.edge(e);
    if !edge.contains(&anchor_u) {
        return Err(ConfigurationError::NotOnEdge { vertex: anchor_u, edge: e });
    }
    let free: Vec<usize> = edge.iter().copied().filter(|&v| v != anchor_u).collect();
    let (attached, unattached) = classify_free_vertices(h, e, &free)?;
    if attached.len() != t {
        return Err(ConfigurationError::PendantCountMismatch { expected: t, found: attached.len() });
    }
    let rho = pair.rho;
    let kf = k as f64;
    let xu = pair.x[anchor_u];
    let damp = 1.0 - rho.powi(-(k as i32));
    let (attached_value, unattached_value) = if t == k - 1 {
        (xu / (rho - rho.powi(1 - k as i32)), 0.0)
    } else if t == 0 {
        (0.0, xu / rho)
    } else {
        (xu / (rho * damp.powf((t as f64 + 1.0) / kf)), xu / (rho * damp.powf(t as f64 / kf)))
    };
    Ok(IdentityReport {
        attached_defect: max_defect(&attached, &pair.x, attached_value),
        unattached_defect: max_defect(&unattached, &pair.x, unattached_value),
        attached,
        unattached,
    })
}

/// Checks the components on a 2-cycle edge `e1 = {v1, v2, ...}` whose other
/// `k-2` vertices are of degree one or carry one pendant edge; exactly
/// `pendant_count_t - 1` of them carry one.
///
/// With `phi = rho (1 - rho^{-k})^{(t+1)/k}`, a pendant-carrying vertex has
/// `x = sqrt(x_{v1} x_{v2} / phi)` and a degree-one vertex has
/// `x = (1 - rho^{-k})^{1/k} sqrt(x_{v1} x_{v2} / phi)`.
pub fn check_closed_form_w(
    h: &Hypergraph,
    v1: usize,
    v2: usize,
    e1: usize,
    pendant_count_t: usize,
    pair: &EigenPair,
) -> Result<IdentityReport, ConfigurationError> {
    check_base(h, e1, pair)?;
    let k = h.k();
    let t = pendant_count_t;
    if t < 1 || t > k - 1 {
        return Err(ConfigurationError::PendantCountRange { t, min: 1, max: k - 1 });
    }
    let edge = h.edge(e1);
    for v in [v1, v2] {
        if !edge.contains(&v) {
            return Err(ConfigurationError::NotOnEdge { vertex: v, edge: e1 });
        }
    }
    let partner = h.edges().iter().enumerate().any(|(i, e)| i != e1 && e.contains(&v1) && e.contains(&v2));
    if v1 == v2 || !partner {
        return Err(ConfigurationError::NotTwoCycle(v1, v2));
    }
    let free: Vec<usize> = edge.iter().copied().filter(|&v| v != v1 && v != v2).collect();
    let (attached, unattached) = classify_free_vertices(h, e1, &free)?;
    if attached.len() != t - 1 {
        return Err(ConfigurationError::PendantCountMismatch { expected: t - 1, found: attached.len() });
    }
    let rho = pair.rho;
    let kf = k as f64;
    let x12 = pair.x[v1] * pair.x[v2];
    let damp = 1.0 - rho.powi(-(k as i32));
    let (attached_value, unattached_value) = if t == k - 1 {
        ((x12 / (rho - rho.powi(1 - k as i32))).sqrt(), 0.0)
    } else if t == 1 {
        (0.0, (x12 / rho).sqrt())
    } else {
        let phi = rho * damp.powf((t as f64 + 1.0) / kf);
        let w = (x12 / phi).sqrt();
        (w, damp.powf(1.0 / kf) * w)
    };
    Ok(IdentityReport {
        attached_defect: max_defect(&attached, &pair.x, attached_value),
        unattached_defect: max_defect(&unattached, &pair.x, unattached_value),
        attached,
        unattached,
    })
}
