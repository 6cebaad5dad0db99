//! The extremal family U(n,k; f; r,s; t,w) and the theorem presets G1-G6.
//!
//! Construction starts from a 2-cycle `v1 e1 v2 e2 v1` and attaches, in
//! order: `f` pendant edges at `v2`; `r` pendant edges on distinct free
//! vertices of `e1`; `s` on distinct free vertices of `e2`; `t` edges at
//! `v1` whose other `k-1` vertices each carry one pendant edge; when
//! `w >= 1`, one edge at `v1` with `w` of its other vertices carrying one
//! pendant edge; finally `p` pendant edges at `v1`, where `p` is whatever is
//! left of the edge budget `m`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("k = {0} is below 3")]
    UniformityTooSmall(usize),
    #[error("f = {0} exceeds 1")]
    FTooLarge(usize),
    #[error("r = {r} exceeds k - 2 = {max}")]
    RTooLarge { r: usize, max: usize },
    #[error("s = {s} exceeds k - 2 = {max}")]
    STooLarge { s: usize, max: usize },
    #[error("w = {w} exceeds k - 2 = {max}")]
    WTooLarge { w: usize, max: usize },
    #[error("edge budget m = {m} is short by {deficit} edges (pendant count p at v1 would be negative)")]
    BudgetExceeded { m: usize, deficit: usize },
    #[error("preset {preset} does not apply to (k={k}, m={m}, z={z}): {reason}")]
    OutOfRange { preset: Preset, k: usize, m: usize, z: usize, reason: String },
    #[error("no theorem case covers (k={k}, m={m}, z={z})")]
    NoCase { k: usize, m: usize, z: usize },
}

/// The tuple `(k, m, f, r, s, t, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub k: usize,
    pub m: usize,
    pub f: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub w: usize,
}

impl FamilyParams {
    /// `f + r + s + t(k-1) + w + 1`.
    pub fn z(&self) -> usize {
        self.f + self.r + self.s + self.t * (self.k - 1) + self.w + 1
    }

    /// `(k-1) m`.
    pub fn n(&self) -> usize {
        (self.k - 1) * self.m
    }

    /// Edges used by steps (1)-(5) plus the cycle: everything except the
    /// pendant edges at `v1`.
    fn reserved(&self) -> usize {
        let k = self.k.max(2);
        2 + self.f + self.r + self.s + self.t * k + self.w + self.w.div_ceil(k - 1)
    }

    /// Pendant edges attached at `v1` in the last step; negative when the
    /// budget is infeasible.
    pub fn p(&self) -> i64 {
        self.m as i64 - self.reserved() as i64
    }

    pub fn check(&self) -> Result<(), FamilyError> {
        let k = self.k;
        if k < 3 {
            return Err(FamilyError::UniformityTooSmall(k));
        }
        if self.f > 1 {
            return Err(FamilyError::FTooLarge(self.f));
        }
        if self.r > k - 2 {
            return Err(FamilyError::RTooLarge { r: self.r, max: k - 2 });
        }
        if self.s > k - 2 {
            return Err(FamilyError::STooLarge { s: self.s, max: k - 2 });
        }
        if self.w > k - 2 {
            return Err(FamilyError::WTooLarge { w: self.w, max: k - 2 });
        }
        if self.p() < 0 {
            return Err(FamilyError::BudgetExceeded { m: self.m, deficit: (-self.p()) as usize });
        }
        Ok(())
    }

    /// Every tuple with `k` and `m` fixed that passes [`FamilyParams::check`].
    pub fn all_feasible(k: usize, m: usize) -> Vec<FamilyParams> {
        let mut out = Vec::new();
        if k < 3 {
            return out;
        }
        for f in 0..=1 {
            for r in 0..=k - 2 {
                for s in 0..=k - 2 {
                    for w in 0..=k - 2 {
                        for t in 0..=m {
                            let p = FamilyParams { k, m, f, r, s, t, w };
                            if p.check().is_ok() {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Which construction step produced an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRole {
    CycleE1,
    CycleE2,
    /// Step (1): pendant edge at `v2`.
    PendantAtV2,
    /// Step (2): pendant edge on a free vertex of `e1`.
    PendantOnE1,
    /// Step (3): pendant edge on a free vertex of `e2`.
    PendantOnE2,
    /// Step (4): the `i`-th nonpendant edge at `v1`.
    TEdge(usize),
    /// Step (4): pendant edge hanging off the `i`-th T-edge.
    PendantOnTEdge(usize),
    /// Step (5).
    WEdge,
    /// Step (5): pendant edge hanging off the W-edge.
    PendantOnWEdge,
    /// Step (6).
    PendantAtV1,
}

/// Vertex and edge bookkeeping for a built family member. Edge indices refer
/// to the sorted edge list of the built hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    pub v1: usize,
    pub v2: usize,
    pub e1: usize,
    pub e2: usize,
    pub t_edges: Vec<usize>,
    pub w_edge: Option<usize>,
    /// `edge_roles[i]` is the role of edge `i`.
    pub edge_roles: Vec<EdgeRole>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub params: FamilyParams,
    pub graph: Hypergraph,
    pub roles: Roles,
}

impl Family {
    /// Hypergraph JSON with an extra `"roles"` block.
    pub fn to_json(&self) -> String {
        let mut value = serde_json::to_value(&self.graph).expect("serialisable");
        let obj = value.as_object_mut().expect("hypergraph serialises to an object");
        obj.insert("roles".into(), serde_json::to_value(&self.roles).expect("serialisable"));
        obj.insert("params".into(), serde_json::to_value(self.params).expect("serialisable"));
        serde_json::to_string(&value).expect("serialisable")
    }
}

struct Builder {
    k: usize,
    next: usize,
    edges: Vec<(Vec<usize>, EdgeRole)>,
}

impl Builder {
    fn fresh(&mut self, count: usize) -> Vec<usize> {
        let out = (self.next..self.next + count).collect();
        self.next += count;
        out
    }

    /// Attaches an edge at `anchor` with `k-1` fresh vertices, returning them.
    fn attach(&mut self, anchor: usize, role: EdgeRole) -> Vec<usize> {
        let fresh = self.fresh(self.k - 1);
        let mut e = vec![anchor];
        e.extend(&fresh);
        self.edges.push((e, role));
        fresh
    }
}

/// Builds U(n,k; f; r,s; t,w). Vertex numbering is deterministic: `v1 = 0`,
/// `v2 = 1`, the free vertices of `e1` then `e2`, then fresh vertices in
/// step order.
pub fn build_family(params: FamilyParams) -> Result<Family, FamilyError> {
    params.check()?;
    let k = params.k;
    let (v1, v2) = (0, 1);
    let mut b = Builder { k, next: 2, edges: Vec::new() };
    let e1_free = b.fresh(k - 2);
    let e2_free = b.fresh(k - 2);
    b.edges.push(([vec![v1, v2], e1_free.clone()].concat(), EdgeRole::CycleE1));
    b.edges.push(([vec![v1, v2], e2_free.clone()].concat(), EdgeRole::CycleE2));
    for _ in 0..params.f {
        b.attach(v2, EdgeRole::PendantAtV2);
    }
    for &v in &e1_free[..params.r] {
        b.attach(v, EdgeRole::PendantOnE1);
    }
    for &v in &e2_free[..params.s] {
        b.attach(v, EdgeRole::PendantOnE2);
    }
    for i in 0..params.t {
        let others = b.attach(v1, EdgeRole::TEdge(i));
        for v in others {
            b.attach(v, EdgeRole::PendantOnTEdge(i));
        }
    }
    if params.w >= 1 {
        let others = b.attach(v1, EdgeRole::WEdge);
        for &v in &others[..params.w] {
            b.attach(v, EdgeRole::PendantOnWEdge);
        }
    }
    for _ in 0..params.p() {
        b.attach(v1, EdgeRole::PendantAtV1);
    }
    debug_assert_eq!(b.edges.len(), params.m);
    debug_assert_eq!(b.next, params.n());

    let mut built = b.edges;
    for (e, _) in built.iter_mut() {
        e.sort_unstable();
    }
    built.sort_by(|a, b| a.0.cmp(&b.0));
    let edge_roles: Vec<EdgeRole> = built.iter().map(|(_, r)| *r).collect();
    let find = |want: EdgeRole| edge_roles.iter().position(|&r| r == want);
    let roles = Roles {
        v1,
        v2,
        e1: find(EdgeRole::CycleE1).expect("cycle edge"),
        e2: find(EdgeRole::CycleE2).expect("cycle edge"),
        t_edges: (0..params.t).map(|i| find(EdgeRole::TEdge(i)).expect("t edge")).collect(),
        w_edge: find(EdgeRole::WEdge),
        edge_roles,
    };
    let graph = Hypergraph::new(k, params.n(), built.into_iter().map(|(e, _)| e).collect())
        .expect("construction yields a valid hypergraph");
    Ok(Family { params, graph, roles })
}

/// The extremal cases of the theorems, named after the figure panels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Preset {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
}

impl Preset {
    pub const ALL: [Preset; 6] = [Preset::G1, Preset::G2, Preset::G3, Preset::G4, Preset::G5, Preset::G6];
}

impl std::fmt::Display for Preset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "G1" => Ok(Preset::G1),
            "G2" => Ok(Preset::G2),
            "G3" => Ok(Preset::G3),
            "G4" => Ok(Preset::G4),
            "G5" => Ok(Preset::G5),
            "G6" => Ok(Preset::G6),
            _ => Err(format!("unknown preset `{s}` (expected G1..G6)")),
        }
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Upper end of case (5): `m - 2 - ceil((m - 2k)/(k - 1))`.
pub fn g6_upper(k: usize, m: usize) -> i64 {
    let (k, m) = (k as i64, m as i64);
    m - 2 - ceil_div(m - 2 * k, k - 1)
}

/// Parameters of the named theorem case, after checking that `(k, m, z)`
/// lies in its range.
pub fn preset(name: Preset, k: usize, m: usize, z: usize) -> Result<FamilyParams, FamilyError> {
    let fail = |reason: String| FamilyError::OutOfRange { preset: name, k, m, z, reason };
    if k < 3 {
        return Err(FamilyError::UniformityTooSmall(k));
    }
    if z < 1 {
        return Err(fail("z must be at least 1".into()));
    }
    let params = |f, r, s, t, w| FamilyParams { k, m, f, r, s, t, w };
    if name == Preset::G1 {
        if m != z + 1 {
            return Err(fail("requires m = z + 1".into()));
        }
    } else if m < z + 2 {
        return Err(fail("requires m >= z + 2".into()));
    }
    let p = match name {
        Preset::G1 => params(0, 0, z - 1, 0, 0),
        Preset::G2 if z == 1 => params(0, 0, 0, 0, 0),
        Preset::G2 => return Err(fail("requires z = 1".into())),
        Preset::G3 if z == 2 => params(1, 0, 0, 0, 0),
        Preset::G3 => return Err(fail("requires z = 2".into())),
        Preset::G4 if (3..=k).contains(&z) => params(1, z - 2, 0, 0, 0),
        Preset::G4 => return Err(fail("requires 3 <= z <= k".into())),
        Preset::G5 if (k + 1..=2 * k - 2).contains(&z) => params(1, k - 2, z - k, 0, 0),
        Preset::G5 => return Err(fail("requires k + 1 <= z <= 2k - 2".into())),
        Preset::G6 => {
            if z < 2 * k - 1 || z as i64 > g6_upper(k, m) {
                return Err(fail(format!(
                    "requires 2k - 1 <= z <= m - 2 - ceil((m - 2k)/(k - 1)) = {}",
                    g6_upper(k, m)
                )));
            }
            let excess = z + 2 - 2 * k;
            params(1, k - 2, k - 2, excess / (k - 1), excess % (k - 1))
        }
    };
    p.check().map_err(|e| fail(e.to_string()))?;
    Ok(p)
}

/// The theorem case covering `(k, m, z)`, if any.
pub fn case_for(k: usize, m: usize, z: usize) -> Result<Preset, FamilyError> {
    Preset::ALL.into_iter().find(|&name| preset(name, k, m, z).is_ok()).ok_or(FamilyError::NoCase { k, m, z })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let p = FamilyParams { k: 3, m: 8, f: 1, r: 1, s: 1, t: 0, w: 1 };
        assert_eq!(p.z(), 5);
        assert_eq!(p.n(), 16);
        // two cycle edges, f, r, s, the W-edge and its one pendant
        assert_eq!(p.p(), 8 - 2 - 1 - 1 - 1 - 1 - 1);
    }

    #[test]
    fn constraint_errors_name_the_violation() {
        let base = FamilyParams { k: 3, m: 6, f: 0, r: 0, s: 0, t: 0, w: 0 };
        assert_eq!(build_family(FamilyParams { f: 2, ..base }).unwrap_err(), FamilyError::FTooLarge(2));
        assert!(matches!(build_family(FamilyParams { r: 2, ..base }), Err(FamilyError::RTooLarge { r: 2, max: 1 })));
        assert!(matches!(
            build_family(FamilyParams { t: 2, ..base }),
            Err(FamilyError::BudgetExceeded { m: 6, deficit: 2 })
        ));
        assert_eq!(build_family(FamilyParams { k: 2, ..base }).unwrap_err(), FamilyError::UniformityTooSmall(2));
    }

    #[test]
    fn g2_shape() {
        let fam = build_family(preset(Preset::G2, 3, 4, 1).unwrap()).unwrap();
        let g = &fam.graph;
        assert_eq!(g.edges(), &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 4, 5], vec![0, 6, 7]]);
        assert_eq!(fam.roles.e1, 0);
        assert_eq!(fam.roles.e2, 1);
        assert_eq!(fam.roles.edge_roles[3], EdgeRole::PendantAtV1);
    }

    #[test]
    fn w_edge_only_when_w_positive() {
        let fam = build_family(FamilyParams { k: 4, m: 6, f: 0, r: 0, s: 0, t: 0, w: 2 }).unwrap();
        assert!(fam.roles.w_edge.is_some());
        let pend = fam.roles.edge_roles.iter().filter(|&&r| r == EdgeRole::PendantOnWEdge).count();
        assert_eq!(pend, 2);
        let fam = build_family(FamilyParams { k: 4, m: 6, f: 0, r: 0, s: 0, t: 0, w: 0 }).unwrap();
        assert_eq!(fam.roles.w_edge, None);
    }

    #[test]
    fn preset_examples() {
        assert_eq!(preset(Preset::G2, 3, 3, 1).unwrap(), FamilyParams { k: 3, m: 3, f: 0, r: 0, s: 0, t: 0, w: 0 });
        let k = 4;
        let g5 = preset(Preset::G5, k, k + 3, k + 1).unwrap();
        assert_eq!((g5.f, g5.r, g5.s, g5.t, g5.w), (1, k - 2, 1, 0, 0));
        for k in 3..=5 {
            let z = 2 * k - 1;
            let m = (z + 2..60).find(|&m| z as i64 <= g6_upper(k, m)).unwrap();
            let g6 = preset(Preset::G6, k, m, z).unwrap();
            assert_eq!((g6.t, g6.w), (0, 1), "k={k}");
            assert_eq!(g6.z(), z);
        }
    }

    #[test]
    fn preset_ranges() {
        assert!(preset(Preset::G1, 3, 4, 2).is_err());
        assert!(preset(Preset::G4, 3, 5, 4).is_err());
        assert!(preset(Preset::G5, 3, 4, 4).is_err());
        assert_eq!(case_for(3, 3, 2), Ok(Preset::G1));
        assert_eq!(case_for(3, 4, 1), Ok(Preset::G2));
        assert_eq!(case_for(3, 4, 2), Ok(Preset::G3));
        assert_eq!(case_for(3, 5, 3), Ok(Preset::G4));
        assert!(case_for(3, 4, 3).is_err());
    }

    #[test]
    fn preset_z_matches_formula() {
        for k in 3..=5 {
            for m in 3..=14 {
                for z in 1..m {
                    if let Ok(name) = case_for(k, m, z) {
                        assert_eq!(preset(name, k, m, z).unwrap().z(), z, "{name} k={k} m={m}");
                    }
                }
            }
        }
    }
}
