use serde::Serialize;

use super::Verdict;
use crate::error::Result;
use crate::jfun::{j_coefficient, unstable_coeff_noneq, JValue};
use crate::model::ModelParams;
use crate::state::{noneq_limit, StateClass};

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub degrees_checked: Vec<u32>,
    pub verdict: Verdict,
}

impl LimitReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

fn first_difference(beta: u32, x: &StateClass, y: &StateClass, p: &ModelParams) -> Option<Verdict> {
    let zero = p.ratfunc_zero();
    let keys: std::collections::BTreeSet<_> = x.entries().keys().chain(y.entries().keys()).collect();
    for &(m, l) in keys {
        let a = x.get(m, l).unwrap_or(&zero);
        let b = y.get(m, l).unwrap_or(&zero);
        if a != b {
            return Some(Verdict::compare_at(beta, m, Some(l), a, b));
        }
    }
    None
}

/// The non-equivariant limit of the equivariant unstable coefficients equals
/// the non-equivariant coefficients for every unstable `β ≤ max_degree`.
pub fn check_noneq_consistency(p: &ModelParams, max_degree: u32) -> Result<LimitReport> {
    let mut degrees = Vec::new();
    for beta in 0..=max_degree {
        if !p.epsilon.is_unstable(beta) {
            continue;
        }
        degrees.push(beta);
        let Some(JValue::Equivariant(eq)) = j_coefficient(beta, p, true).value else { continue };
        let lim = noneq_limit(&eq, p)?.truncate_ct(p);
        let direct = unstable_coeff_noneq(beta, p).truncate_ct(p);
        if let Some(v) = first_difference(beta, &lim, &direct, p) {
            return Ok(LimitReport { degrees_checked: degrees, verdict: v });
        }
    }
    Ok(LimitReport { degrees_checked: degrees, verdict: Verdict::ExactEqual })
}
