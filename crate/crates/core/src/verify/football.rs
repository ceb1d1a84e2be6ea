//! Equivariant cohomology of line bundles on the orbifold ℙ¹ with cyclic
//! isotropy at both poles, and the edge checks built on it.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::Serialize;

use super::Verdict;
use crate::algebra::{Factored, MPoly};
use crate::error::{Error, Result};
use crate::graphs::{edge_factor, in_degree_set, unstable_edge_display, unstable_val1_factor};
use crate::model::{big, frac, ModelParams, Multiplicity};
use crate::state::eta;

#[derive(Clone, Debug, PartialEq)]
pub struct FootballBundle {
    /// Degree of the pushforward to the coarse ℙ¹.
    pub coarse_degree: i64,
    pub mult_at_0: Multiplicity,
    pub mult_at_infty: Multiplicity,
    pub fiber_weight_at_infty: MPoly,
    pub tangent_weight_at_0: MPoly,
}

impl FootballBundle {
    /// Bundle of orbifold degree `orb_deg` with fiber weight `weight_at_0`
    /// at the orbifold point over 0.  With `twisted`, sections are also
    /// forced to vanish at an untwisted pole.
    pub fn from_orbifold(
        orb_deg: Rational64,
        mu_0: Rational64,
        mu_infty: Rational64,
        weight_at_0: &MPoly,
        tau: &MPoly,
        twisted: bool,
        d: u32,
    ) -> Result<Self> {
        let (f0, fi) = (frac(mu_0), frac(mu_infty));
        let mut s_min = f0;
        if twisted && f0.is_zero() {
            s_min = Rational64::one();
        }
        let mut s_max = orb_deg - fi;
        if twisted && fi.is_zero() {
            s_max -= Rational64::one();
        }
        let span = s_max - s_min;
        if !span.is_integer() {
            return Err(Error::InternalInvariantViolation(format!(
                "inconsistent football data: degree {orb_deg}, multiplicities {f0} and {fi}"
            )));
        }
        Ok(FootballBundle {
            coarse_degree: span.to_integer(),
            mult_at_0: Multiplicity::from_rational(f0, d),
            mult_at_infty: Multiplicity::from_rational(fi, d),
            fiber_weight_at_infty: weight_at_0 - &tau.scale(&big(s_max)),
            tangent_weight_at_0: tau.clone(),
        })
    }

    pub fn h0(&self) -> usize {
        (self.coarse_degree + 1).max(0) as usize
    }
}

/// Weights of `H⁰(O(k))` on ℙ¹: one per monomial `x₀^i x₁^{k-i}`.
fn h0_weights(degree: i64, at_infty: &MPoly, tau: &MPoly) -> Vec<MPoly> {
    (0..=degree).map(|i| at_infty + &tau.scale(&BigRational::from_integer(BigInt::from(i)))).collect()
}

/// `(H⁰ weights, H¹ weights)`.  `H¹` comes from the sections of
/// `L^∨ ⊗ ω` with every weight negated.
pub fn football_weights(b: &FootballBundle) -> (Vec<MPoly>, Vec<MPoly>) {
    let tau = &b.tangent_weight_at_0;
    let h0 = h0_weights(b.coarse_degree, &b.fiber_weight_at_infty, tau);
    let dual_at_infty = &(-&b.fiber_weight_at_infty) + tau;
    let h1 = h0_weights(-b.coarse_degree - 2, &dual_at_infty, tau).into_iter().map(|w| -&w).collect();
    (h0, h1)
}

/// Euler class `Π w`; `None` if a weight vanishes and `drop_zero` is unset.
fn euler(ws: &[MPoly], drop_zero: bool, nvars: usize) -> Option<Factored> {
    let mut f = Factored::one(nvars);
    for w in ws {
        if w.is_zero() {
            if drop_zero {
                continue;
            }
            return None;
        }
        f.mul_poly(w, 1).ok()?;
    }
    Some(f)
}

fn rat_int(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Euler-class ratio `e(⊕H¹(L^{w_i})) / (e(⊕H⁰(L^{w_i})) e(H⁰(L^{-d})^{mov})^N)`
/// for a stable edge.
pub fn edge_oracle(p: &ModelParams, ja: usize, jb: usize, beta_e: u32, m: Multiplicity, m2: Multiplicity, twisted: bool) -> Result<Factored> {
    let n = p.nvars();
    let tau = (&p.a(ja) - &p.a(jb)).scale(&BigRational::new(BigInt::one(), BigInt::from(beta_e)));
    let mut num = Factored::one(n);
    let mut den = Factored::one(n);
    for i in 0..p.m() {
        let w = rat_int(p.weights[i] as i64);
        let b = FootballBundle::from_orbifold(
            -rat_int(beta_e as i64) * p.q(i),
            -w * m.value(),
            -w * m2.value(),
            &p.a(ja).scale(&-big(p.q(i))),
            &tau,
            twisted,
            p.d,
        )?;
        let (h0, h1) = football_weights(&b);
        num = num.mul(&euler(&h1, false, n).unwrap_or_else(|| Factored::zero(n)));
        den = den.mul(&euler(&h0, false, n).ok_or(Error::DivisionByZero)?);
    }
    for k in 1..=p.n() {
        let b = FootballBundle::from_orbifold(rat_int(beta_e as i64), Rational64::zero(), Rational64::zero(), &(&p.a(ja) - &p.a(k)), &tau, false, p.d)?;
        let (h0, h1) = football_weights(&b);
        num = num.mul(&euler(&h1, false, n).unwrap_or_else(|| Factored::zero(n)));
        den = den.mul(&euler(&h0, true, n).unwrap());
    }
    num.div(&den)
}

/// Oracle for an unstable edge of degree `β_e` whose `ja` end carries an
/// unstable valence-one vertex of degree `β_v`.
pub fn unstable_edge_oracle(p: &ModelParams, ja: usize, jb: usize, beta_e: u32, beta_v: u32, m2: Multiplicity) -> Result<Factored> {
    let n = p.nvars();
    let tau = (&p.a(ja) - &p.a(jb)).scale(&BigRational::new(BigInt::one(), BigInt::from(beta_e)));
    let mut num = Factored::one(n);
    let mut den = Factored::one(n);
    let shift = rat_int(beta_v as i64 + 1);
    for i in 0..p.m() {
        let w = rat_int(p.weights[i] as i64);
        let lam0 = &p.a(ja).scale(&-big(p.q(i))) - &tau.scale(&big(p.q(i) * shift));
        let b = FootballBundle::from_orbifold(
            -rat_int((beta_e + beta_v) as i64 + 1) * p.q(i),
            Rational64::zero(),
            -w * m2.value(),
            &lam0,
            &tau,
            false,
            p.d,
        )?;
        let (h0, h1) = football_weights(&b);
        num = num.mul(&euler(&h1, false, n).unwrap_or_else(|| Factored::zero(n)));
        den = den.mul(&euler(&h0, false, n).ok_or(Error::DivisionByZero)?);
    }
    for k in 1..=p.n() {
        let lam0 = &(&p.a(ja) - &p.a(k)) + &tau.scale(&BigRational::from_integer(beta_v.into()));
        let b = FootballBundle::from_orbifold(rat_int((beta_e + beta_v) as i64), Rational64::zero(), Rational64::zero(), &lam0, &tau, false, p.d)?;
        let (h0, h1) = football_weights(&b);
        num = num.mul(&euler(&h1, false, n).unwrap_or_else(|| Factored::zero(n)));
        den = den.mul(&euler(&h0, true, n).unwrap());
    }
    num.div(&den)
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeReport {
    pub ends: (usize, usize),
    pub beta_e: u32,
    pub beta_v: Option<u32>,
    pub mult: String,
    pub mult_other: String,
    pub checks: Vec<(String, Verdict)>,
}

impl EdgeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, v)| v.is_pass())
    }
}

fn compare(label: &str, beta: u32, sector: Multiplicity, lhs: &Factored, rhs: &Factored) -> (String, Verdict) {
    if lhs == rhs {
        return (label.to_string(), Verdict::ExactEqual);
    }
    (label.to_string(), Verdict::compare(beta, sector, &lhs.to_ratfunc(), &rhs.to_ratfunc()))
}

/// Compare the stable edge product formulas with the football oracle: the
/// untwisted oracle against the strict ranges, the node-twisted oracle
/// against the non-strict ranges times `dβ_e`.
pub fn check_edge_formula(ja: usize, jb: usize, beta_e: u32, m: Multiplicity, m2: Multiplicity, p: &ModelParams) -> Result<EdgeReport> {
    if !in_degree_set(beta_e, m, m2) {
        return Err(Error::InvalidDegree(format!("{beta_e} is not in E^{{{m},{m2}}}")));
    }
    let scale = BigRational::from_integer(BigInt::from(p.d as u64 * beta_e as u64));
    let plain = edge_factor(p, ja, jb, beta_e, m, false)?;
    let twisted = edge_factor(p, ja, jb, beta_e, m, true)?.scale(&scale);
    let checks = vec![
        compare("untwisted", beta_e, m, &edge_oracle(p, ja, jb, beta_e, m, m2, false)?, &plain),
        compare("twisted", beta_e, m, &edge_oracle(p, ja, jb, beta_e, m, m2, true)?, &twisted),
    ];
    Ok(EdgeReport { ends: (ja, jb), beta_e, beta_v: None, mult: m.to_string(), mult_other: m2.to_string(), checks })
}

/// Unstable edge: oracle against the closed display, plus the identity
/// `(V/η)·E = (a_A - a_B)/(dβ_e²) · display · Π_{i∈F_{m'}} (-w_i a_B/d)`
/// linking it to the vertex and edge factors.
pub fn check_unstable_edge(ja: usize, jb: usize, beta_e: u32, beta_v: u32, m2: Multiplicity, p: &ModelParams) -> Result<EdgeReport> {
    let m = p.mult(-(beta_v as i64) - 1);
    if !in_degree_set(beta_e, m, m2) {
        return Err(Error::InvalidDegree(format!("{beta_e} is not in E^{{{m},{m2}}}")));
    }
    let display = unstable_edge_display(p, ja, jb, beta_e, beta_v, m)?;
    let oracle = unstable_edge_oracle(p, ja, jb, beta_e, beta_v, m2)?;
    let tau = (&p.a(ja) - &p.a(jb)).scale(&BigRational::new(BigInt::one(), BigInt::from(beta_e)));
    let lhs = unstable_val1_factor(p, ja, &tau, beta_v, m)?
        .div(&eta(ja, m, p))?
        .mul(&edge_factor(p, ja, jb, beta_e, m, true)?);
    let mut rhs = display.scale(&BigRational::new(BigInt::one(), BigInt::from(p.d as u64 * beta_e as u64)));
    rhs.mul_poly(&tau, 1)?;
    for i in p.broad_set(m2) {
        rhs.mul_poly(&p.a(jb).scale(&-big(p.q(i - 1))), 1)?;
    }
    let checks = vec![compare("oracle", beta_e, m, &oracle, &display), compare("vertex-edge", beta_e, m, &lhs, &rhs)];
    Ok(EdgeReport { ends: (ja, jb), beta_e, beta_v: Some(beta_v), mult: m.to_string(), mult_other: m2.to_string(), checks })
}
