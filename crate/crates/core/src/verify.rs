//! Exhaustive check of the extremal-family theorems at small sizes: enumerate
//! the class, solve every member, and compare the maximiser with the
//! predicted family.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_key, CanonicalKey};
use crate::enumerate::{generate, EnumerateError, GenSpec, Shape};
use crate::families::{build_family, case_for, preset, FamilyError, Preset};
use crate::hypergraph::Hypergraph;
use crate::matching::{matching_number, ClassMode};
use crate::spectral::{principal_eigenpair, SolverConfig, SpectralError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("(k={k}, m={m}, z={z}) is outside every theorem case")]
    NoCase { k: usize, m: usize, z: usize },
    #[error("class for (k={k}, m={m}, z={z}, {mode}) is empty")]
    EmptyClass { k: usize, m: usize, z: usize, mode: ClassMode },
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

impl VerifyError {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, VerifyError::NoCase { .. } | VerifyError::EmptyClass { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
    Tie,
    Infeasible,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Match => 0,
            Status::Mismatch => 2,
            Status::Tie => 3,
            Status::Infeasible => 4,
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::Tie => "tie",
            Status::Infeasible => "infeasible",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub k: usize,
    pub m: usize,
    pub z: usize,
    pub mode: ClassMode,
    pub case: Option<Preset>,
    pub class_size: usize,
    pub max_rho: Option<f64>,
    pub argmax_key: Option<CanonicalKey>,
    pub expected_key: Option<CanonicalKey>,
    #[serde(rename = "match")]
    pub is_match: bool,
    /// `None` when the class has a single member.
    pub runner_up_gap: Option<f64>,
    pub status: Status,
}

impl VerifyReport {
    /// Row for a request outside every theorem case or with an empty class.
    pub fn infeasible(k: usize, m: usize, z: usize, mode: ClassMode) -> Self {
        VerifyReport {
            k,
            m,
            z,
            mode,
            case: case_for(k, m, z).ok(),
            class_size: 0,
            max_rho: None,
            argmax_key: None,
            expected_key: None,
            is_match: false,
            runner_up_gap: None,
            status: Status::Infeasible,
        }
    }
}

/// Every unicyclic class for `(k, m)` with its key, matching number and
/// spectral radius.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub k: usize,
    pub m: usize,
    pub graphs: Vec<Hypergraph>,
    pub keys: Vec<CanonicalKey>,
    pub alpha: Vec<usize>,
    pub rho: Vec<f64>,
}

impl Corpus {
    pub fn build(k: usize, m: usize, cfg: &SolverConfig, cap: usize) -> Result<Self, VerifyError> {
        cfg.validate()?;
        let spec = GenSpec { cap, ..GenSpec::new(k, m, Shape::Unicyclic) };
        let graphs = generate(&spec)?;
        let solved: Vec<Result<(CanonicalKey, usize, f64), SpectralError>> = graphs
            .par_iter()
            .map(|h| {
                let rho = principal_eigenpair(h, cfg)?.rho;
                Ok((canonical_key(h), matching_number(h).alpha, rho))
            })
            .collect();
        let mut corpus = Corpus { k, m, graphs, keys: Vec::new(), alpha: Vec::new(), rho: Vec::new() };
        for row in solved {
            let (key, alpha, rho) = row?;
            corpus.keys.push(key);
            corpus.alpha.push(alpha);
            corpus.rho.push(rho);
        }
        Ok(corpus)
    }

    fn members(&self, z: usize, mode: ClassMode) -> Vec<usize> {
        (0..self.graphs.len())
            .filter(|&i| match mode {
                ClassMode::AtLeast => self.alpha[i] >= z,
                ClassMode::Exact => self.alpha[i] == z,
            })
            .collect()
    }

    /// Compares the class maximiser with the predicted family. `tol` sets the
    /// tie threshold `10 tol`.
    pub fn verify(&self, z: usize, mode: ClassMode, tol: f64) -> Result<VerifyReport, VerifyError> {
        let (k, m) = (self.k, self.m);
        let case = case_for(k, m, z).map_err(|_| VerifyError::NoCase { k, m, z })?;
        let params = preset(case, k, m, z).map_err(|_| VerifyError::NoCase { k, m, z })?;
        let expected = build_family(params).map_err(|_: FamilyError| VerifyError::NoCase { k, m, z })?;
        let expected_key = canonical_key(&expected.graph);

        let mut members = self.members(z, mode);
        if members.is_empty() {
            return Err(VerifyError::EmptyClass { k, m, z, mode });
        }
        // Descending rho; key order breaks exact ties deterministically.
        members.sort_by(|&a, &b| self.rho[b].total_cmp(&self.rho[a]).then_with(|| self.keys[a].cmp(&self.keys[b])));
        let best = members[0];
        let runner_up_gap = members.get(1).map(|&i| self.rho[best] - self.rho[i]);
        let is_match = self.keys[best] == expected_key;
        let status = match runner_up_gap {
            Some(gap) if gap <= 10.0 * tol => Status::Tie,
            _ if is_match => Status::Match,
            _ => Status::Mismatch,
        };
        Ok(VerifyReport {
            k,
            m,
            z,
            mode,
            case: Some(case),
            class_size: members.len(),
            max_rho: Some(self.rho[best]),
            argmax_key: Some(self.keys[best].clone()),
            expected_key: Some(expected_key),
            is_match,
            runner_up_gap,
            status,
        })
    }
}

pub fn verify_theorem(
    k: usize,
    m: usize,
    z: usize,
    mode: ClassMode,
    cfg: &SolverConfig,
) -> Result<VerifyReport, VerifyError> {
    if case_for(k, m, z).is_err() {
        return Err(VerifyError::NoCase { k, m, z });
    }
    Corpus::build(k, m, cfg, crate::enumerate::DEFAULT_CAP)?.verify(z, mode, cfg.tol)
}

/// Values of `z` in `1..m` that fall under some theorem case.
pub fn feasible_z(k: usize, m: usize) -> Vec<usize> {
    (1..m).filter(|&z| case_for(k, m, z).is_ok()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(TableFormat::Text),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!("unknown format `{other}` (expected json|csv|text)")),
        }
    }
}

const COLUMNS: [&str; 11] =
    ["k", "m", "z", "mode", "case", "class_size", "max_rho", "runner_up_gap", "match", "status", "argmax_key"];

fn row(r: &VerifyReport) -> [String; 11] {
    let opt = |v: Option<f64>| v.map(|x| format!("{x:.12}")).unwrap_or_else(|| "-".into());
    [
        r.k.to_string(),
        r.m.to_string(),
        r.z.to_string(),
        r.mode.to_string(),
        r.case.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
        r.class_size.to_string(),
        opt(r.max_rho),
        opt(r.runner_up_gap),
        r.is_match.to_string(),
        r.status.to_string(),
        r.argmax_key.as_ref().map(|k| k.to_hex()).unwrap_or_else(|| "-".into()),
    ]
}

/// Reports ordered with failures last, then by `(k, m, z, mode)`.
pub fn sorted(reports: &[VerifyReport]) -> Vec<VerifyReport> {
    let mut out = reports.to_vec();
    out.sort_by_key(|r| (r.status != Status::Match, r.k, r.m, r.z, r.mode == ClassMode::Exact));
    out
}

pub fn report_table(reports: &[VerifyReport], format: TableFormat) -> String {
    let reports = sorted(reports);
    match format {
        TableFormat::Json => serde_json::to_string_pretty(&reports).expect("serialisable") + "\n",
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(COLUMNS).expect("in-memory write");
            for r in &reports {
                w.write_record(row(r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
        }
        TableFormat::Text => {
            let rows: Vec<[String; 11]> = reports.iter().map(row).collect();
            let mut width: Vec<usize> = COLUMNS.iter().map(|c| c.len()).collect();
            for r in &rows {
                for (w, cell) in width.iter_mut().zip(r) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = line(COLUMNS.to_vec());
            for r in &rows {
                out += &line(r.iter().map(String::as_str).collect());
            }
            out
        }
    }
}

/// Largest exit code over all reports; 0 for none.
pub fn exit_code(reports: &[VerifyReport]) -> i32 {
    reports.iter().map(|r| r.status.exit_code()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dummy(z: usize, status: Status) -> VerifyReport {
        VerifyReport {
            status,
            is_match: status == Status::Match,
            ..VerifyReport::infeasible(3, 5, z, ClassMode::AtLeast)
        }
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(report_table(&[], TableFormat::Csv).lines().count(), 1);
        assert_eq!(report_table(&[], TableFormat::Text).lines().count(), 1);
        assert_eq!(exit_code(&[]), 0);
    }

    #[test]
    fn failures_sort_last_and_set_exit_code() {
        let reports = vec![dummy(1, Status::Mismatch), dummy(3, Status::Match), dummy(2, Status::Match)];
        let csv = report_table(&reports, TableFormat::Csv);
        let statuses: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(9).unwrap()).collect();
        assert_eq!(statuses, ["match", "match", "mismatch"]);
        let zs: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
        assert_eq!(zs, ["2", "3", "1"]);
        assert_eq!(exit_code(&reports), 2);
        assert_eq!(exit_code(&[dummy(1, Status::Tie), dummy(2, Status::Mismatch)]), 3);
    }

    #[test]
    fn small_theorem_cases() {
        let cfg = SolverConfig::default();
        let r = verify_theorem(3, 3, 2, ClassMode::AtLeast, &cfg).unwrap();
        assert_eq!(r.status, Status::Match);
        assert_eq!(r.case, Some(Preset::G1));
        assert_eq!(r.class_size, 1);
        assert_eq!(r.runner_up_gap, None);
        assert!(verify_theorem(3, 4, 3, ClassMode::AtLeast, &cfg).unwrap_err().is_infeasible());
    }

    #[test]
    fn feasible_z_for_small_m() {
        assert_eq!(feasible_z(3, 3), vec![1, 2]);
        assert_eq!(feasible_z(3, 4), vec![1, 2]);
        assert_eq!(feasible_z(3, 5), vec![1, 2, 3]);
    }
}
