//! Audits of the `z`-denominators of the equivariant unstable series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::algebra::{Factored, MPoly, RatFunc};
use crate::error::Result;
use crate::jfun::iota_j_coeff_eq;
use crate::model::{ModelParams, Multiplicity};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleFailure {
    pub beta: u32,
    /// Part of the denominator left after removing every admissible root.
    pub residual: String,
    pub repeated_root: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PoleReport {
    pub fixed_point: usize,
    pub mult: String,
    pub degrees_checked: Vec<u32>,
    pub failure: Option<PoleFailure>,
}

impl PoleReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Strip the admissible roots `z = 0` and `z = (a_j - a_k)/b`, `1 ≤ b ≤ max_b`,
/// from the denominator of `f`.  Returns `None` when only `z`-free content
/// remains and nonzero roots are simple; otherwise a description of what
/// was left over.
pub fn audit_denominator(f: &RatFunc, j: usize, max_b: u32, p: &ModelParams) -> Option<(MPoly, Option<MPoly>)> {
    let n = p.nvars();
    let z = MPoly::var(n, 0);
    let mut den = f.den().clone();
    while den.min_degree_in(0).unwrap_or(0) > 0 {
        den = den.div_exact(&z).expect("z divides");
    }
    let mut repeated = None;
    for lin in admissible_roots(j, max_b, p) {
        let mut count = 0;
        while let Some(q) = den.div_exact(&lin) {
            den = q;
            count += 1;
        }
        if count > 1 && repeated.is_none() {
            repeated = Some(lin);
        }
    }
    if den.involves(0) || repeated.is_some() {
        Some((den, repeated))
    } else {
        None
    }
}

fn admissible_roots(j: usize, max_b: u32, p: &ModelParams) -> Vec<MPoly> {
    let z = p.z();
    let mut out = Vec::new();
    for k in (1..=p.n()).filter(|&k| k != j) {
        for b in 1..=max_b {
            let root = (&p.a(j) - &p.a(k)).scale(&BigRational::new(BigInt::one(), BigInt::from(b)));
            out.push(&z - &root);
        }
    }
    out
}

/// As [`audit_denominator`] for a product of monic linear factors, where
/// distinct factors are coprime and the reduced denominator can be read
/// off the negative exponents.
pub fn audit_factored(f: &Factored, j: usize, max_b: u32, p: &ModelParams) -> Option<(MPoly, Option<MPoly>)> {
    let z = p.z();
    let allowed = admissible_roots(j, max_b, p);
    let mut residual = MPoly::one(p.nvars());
    let mut repeated = None;
    for (g, &e) in f.factors() {
        if e >= 0 || !g.involves(0) || *g == z {
            continue;
        }
        if allowed.contains(g) {
            if e < -1 && repeated.is_none() {
                repeated = Some(g.clone());
            }
        } else {
            residual = &residual * &g.pow(e.unsigned_abs());
        }
    }
    if residual.involves(0) || repeated.is_some() {
        Some((residual, repeated))
    } else {
        None
    }
}

/// Audit every coefficient of the series at fixed point `j` in sector `m`
/// up to degree `max_degree`.
pub fn check_pole_structure(j: usize, m: Multiplicity, p: &ModelParams, max_degree: u32) -> Result<PoleReport> {
    let mut report = PoleReport { fixed_point: j, mult: m.to_string(), degrees_checked: vec![], failure: None };
    for beta in 0..=max_degree {
        let (sector, f) = iota_j_coeff_eq(beta, j, p);
        if sector != m {
            continue;
        }
        report.degrees_checked.push(beta);
        let audit = if f.is_linear() {
            audit_factored(&f, j, beta.max(1), p)
        } else {
            audit_denominator(&f.to_ratfunc(), j, beta.max(1), p)
        };
        if let Some((residual, rep)) = audit {
            report.failure = Some(PoleFailure {
                beta,
                residual: residual.to_string(),
                repeated_root: rep.map(|x| x.to_string()),
            });
            break;
        }
    }
    Ok(report)
}
