//! Identity checks and independent oracles, selectable by name.

mod football;
mod limit;
mod poles;
mod residue;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::RatFunc;
use crate::error::Result;
use crate::model::{ModelParams, Multiplicity};

pub use football::{
    check_edge_formula, check_unstable_edge, edge_oracle, football_weights, unstable_edge_oracle, EdgeReport,
    FootballBundle,
};
pub use limit::{check_noneq_consistency, LimitReport};
pub use poles::{audit_denominator, audit_factored, check_pole_structure, PoleFailure, PoleReport};
pub use residue::{boundary_tree, check_residue_recursion, check_residue_recursion_scaled, residue_cases, ResidueReport};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    ExactEqual,
    Mismatch {
        beta: u32,
        sector: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        power: Option<u32>,
        lhs: String,
        rhs: String,
    },
}

impl Verdict {
    pub fn compare(beta: u32, sector: Multiplicity, lhs: &RatFunc, rhs: &RatFunc) -> Verdict {
        Self::compare_at(beta, sector, None, lhs, rhs)
    }

    pub fn compare_at(beta: u32, sector: Multiplicity, power: Option<u32>, lhs: &RatFunc, rhs: &RatFunc) -> Verdict {
        if lhs == rhs {
            Verdict::ExactEqual
        } else {
            Verdict::Mismatch { beta, sector: sector.to_string(), power, lhs: lhs.to_string(), rhs: rhs.to_string() }
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::ExactEqual)
    }
}

/// Result of one named verifier over a whole model.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub verifier: String,
    pub model: String,
    pub checks: usize,
    pub failures: Vec<Value>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verifier": self.verifier,
            "model": self.model,
            "checks": self.checks,
            "passed": self.passed(),
            "failures": self.failures,
        })
    }
}

pub trait Verifier: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, p: &ModelParams, max_degree: u32) -> Result<Outcome>;
}

fn outcome<T: Serialize>(name: &str, p: &ModelParams, reports: Vec<(bool, T)>) -> Outcome {
    let checks = reports.len();
    let failures = reports
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, r)| serde_json::to_value(r).expect("serializable report"))
        .collect();
    Outcome { verifier: name.into(), model: p.label(), checks, failures }
}

pub const MAX_EDGE_DEGREE_RESIDUES: u32 = 3;
pub const MAX_EDGE_DEGREE_EDGES: u32 = 6;
pub const MAX_VERTEX_DEGREE_EDGES: u32 = 4;

pub struct Residues;

impl Verifier for Residues {
    fn name(&self) -> &'static str {
        "residues"
    }

    fn summary(&self) -> &'static str {
        "residue recursion at every pole (a_j - a_j')/b_e, b_e <= 3"
    }

    fn run(&self, p: &ModelParams, max_degree: u32) -> Result<Outcome> {
        let cases = residue_cases(p, MAX_EDGE_DEGREE_RESIDUES);
        let reports = cases
            .par_iter()
            .map(|&(j, j2, m, m2, be)| check_residue_recursion(j, j2, m, m2, be, p, max_degree).map(|r| (r.passed(), r)))
            .collect::<Result<Vec<_>>>()?;
        Ok(outcome(self.name(), p, reports))
    }
}

pub struct Edges;

impl Verifier for Edges {
    fn name(&self) -> &'static str {
        "edges"
    }

    fn summary(&self) -> &'static str {
        "edge product formulas against the football oracle"
    }

    fn run(&self, p: &ModelParams, _max_degree: u32) -> Result<Outcome> {
        let mut jobs = Vec::new();
        for ja in 1..=p.n() {
            for jb in 1..=p.n() {
                if ja == jb {
                    continue;
                }
                for be in 1..=MAX_EDGE_DEGREE_EDGES {
                    for m in p.multiplicities() {
                        for m2 in p.multiplicities() {
                            if crate::graphs::in_degree_set(be, m, m2) {
                                jobs.push((ja, jb, be, None, m, m2));
                            }
                        }
                    }
                    for bv in 0..=MAX_VERTEX_DEGREE_EDGES {
                        let m = p.mult(-(bv as i64) - 1);
                        for m2 in p.multiplicities() {
                            if crate::graphs::in_degree_set(be, m, m2) {
                                jobs.push((ja, jb, be, Some(bv), m, m2));
                            }
                        }
                    }
                }
            }
        }
        let reports = jobs
            .par_iter()
            .map(|&(ja, jb, be, bv, m, m2)| {
                let r = match bv {
                    None => check_edge_formula(ja, jb, be, m, m2, p)?,
                    Some(bv) => check_unstable_edge(ja, jb, be, bv, m2, p)?,
                };
                Ok((r.passed(), r))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(outcome(self.name(), p, reports))
    }
}

pub struct Poles;

impl Verifier for Poles {
    fn name(&self) -> &'static str {
        "poles"
    }

    fn summary(&self) -> &'static str {
        "z-poles only at 0 and (a_j - a_k)/b"
    }

    fn run(&self, p: &ModelParams, max_degree: u32) -> Result<Outcome> {
        let jobs: Vec<(usize, Multiplicity)> =
            (1..=p.n()).flat_map(|j| p.multiplicities().map(move |m| (j, m))).collect();
        let reports = jobs
            .par_iter()
            .map(|&(j, m)| check_pole_structure(j, m, p, max_degree).map(|r| (r.passed(), r)))
            .collect::<Result<Vec<_>>>()?;
        Ok(outcome(self.name(), p, reports))
    }
}

pub struct Limit;

impl Verifier for Limit {
    fn name(&self) -> &'static str {
        "limit"
    }

    fn summary(&self) -> &'static str {
        "non-equivariant limit of the equivariant coefficients"
    }

    fn run(&self, p: &ModelParams, max_degree: u32) -> Result<Outcome> {
        let r = check_noneq_consistency(p, max_degree)?;
        Ok(outcome(self.name(), p, vec![(r.passed(), r)]))
    }
}

/// Verifiers keyed by name.
pub struct Registry {
    verifiers: BTreeMap<&'static str, Box<dyn Verifier>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { verifiers: BTreeMap::new() }
    }

    pub fn register(&mut self, v: Box<dyn Verifier>) {
        self.verifiers.insert(v.name(), v);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Verifier> {
        self.verifiers.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.verifiers.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Verifier> {
        self.verifiers.values().map(|b| b.as_ref())
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(Residues));
        r.register(Box::new(Edges));
        r.register(Box::new(Poles));
        r.register(Box::new(Limit));
        r
    }
}
