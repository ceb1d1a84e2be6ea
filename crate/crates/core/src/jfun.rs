//! Unstable J-function data: closed-form coefficients, `[·]_+`, mirror-map
//! coefficients and the `ι_*`-twisted series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::qseries::QSeries;
use crate::algebra::{Factored, MPoly, Mono, RatFunc};
use crate::model::{big, frac, progression, ModelParams, Multiplicity};
use crate::state::{EqStateClass, Space, StateClass};

/// Whether a degree is computed in closed form or only carried symbolically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityTag {
    Unstable,
    StableSymbolic,
}

#[derive(Clone, Debug)]
pub enum JValue {
    NonEquivariant(StateClass),
    Equivariant(EqStateClass),
}

#[derive(Clone, Debug)]
pub struct JCoefficient {
    pub beta: u32,
    pub sector: Multiplicity,
    pub stability_tag: StabilityTag,
    /// `None` for stable-symbolic degrees.
    pub value: Option<JValue>,
}

/// Laurent polynomial in `z` over ℚ.
type ZLaurent = BTreeMap<i64, BigRational>;

fn zl_mul(x: &ZLaurent, y: &ZLaurent) -> ZLaurent {
    let mut out = ZLaurent::new();
    for (i, a) in x {
        for (j, b) in y {
            let e = out.entry(i + j).or_insert_with(BigRational::zero);
            *e += a * b;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn zl_add_into(x: &mut ZLaurent, y: &ZLaurent) {
    for (i, b) in y {
        let e = x.entry(*i).or_insert_with(BigRational::zero);
        *e += b;
    }
    x.retain(|_, c| !c.is_zero());
}

/// Polynomial in nilpotent `H` truncated above `H^max` with Laurent coefficients.
struct HSeries {
    coeffs: Vec<ZLaurent>,
}

impl HSeries {
    fn constant(c: ZLaurent, max: usize) -> Self {
        let mut coeffs = vec![ZLaurent::new(); max + 1];
        coeffs[0] = c;
        HSeries { coeffs }
    }

    fn mul(&self, other: &HSeries) -> HSeries {
        let max = self.coeffs.len();
        let mut out = vec![ZLaurent::new(); max];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= max || b.is_empty() {
                    continue;
                }
                let p = zl_mul(a, b);
                zl_add_into(&mut out[i + j], &p);
            }
        }
        HSeries { coeffs: out }
    }

    /// `u z + v H`.
    fn linear(u: BigRational, v: BigRational, max: usize) -> HSeries {
        let mut s = Self::constant([(1, u)].into_iter().filter(|(_, c)| !c.is_zero()).collect(), max);
        if max >= 1 {
            s.coeffs[1] = [(0, v)].into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        s
    }

    /// `1/(u z + v H) = Σ_k (-v)^k H^k / (u z)^{k+1}`, `u ≠ 0`.
    fn inverse_linear(u: BigRational, v: BigRational, max: usize) -> HSeries {
        let mut coeffs = Vec::with_capacity(max + 1);
        let mut c = u.recip();
        for k in 0..=max {
            coeffs.push([(-(k as i64) - 1, c.clone())].into_iter().filter(|(_, x)| !x.is_zero()).collect());
            c = c * -&v / &u;
        }
        HSeries { coeffs }
    }
}

fn zl_to_ratfunc(x: &ZLaurent, nvars: usize) -> RatFunc {
    if x.is_empty() {
        return RatFunc::zero(nvars);
    }
    let lo = *x.keys().next().unwrap();
    let shift = (-lo).max(0);
    let num = MPoly::from_terms(
        nvars,
        x.iter().map(|(e, c)| (Mono::var(nvars, 0, (e + shift) as u32), c.clone())),
    );
    let den = MPoly::monomial(nvars, Mono::var(nvars, 0, shift as u32), BigRational::one());
    RatFunc::new(num, den).expect("monomial denominator")
}

/// `z`-monomial expansion of a Laurent polynomial in `z` with constant
/// coefficients; `None` if `r` is not of that shape.
pub fn z_terms(r: &RatFunc) -> Option<Vec<(i64, BigRational)>> {
    if r.num().terms().keys().any(|m| m.0[1..].iter().any(|&e| e > 0)) {
        return None;
    }
    let den = r.den();
    if den.len() != 1 {
        return None;
    }
    let (dm, dc) = den.leading().unwrap();
    if dm.0[1..].iter().any(|&e| e > 0) {
        return None;
    }
    let shift = dm.0[0] as i64;
    Some(r.num().terms().iter().rev().map(|(m, c)| (m.0[0] as i64 - shift, c / dc)).collect())
}

fn r64(x: Rational64) -> BigRational {
    big(x)
}

/// `X_i = (w_i/d)(β+1)`.
fn x_i(p: &ModelParams, i: usize, beta: u32) -> Rational64 {
    p.q(i) * Rational64::from_integer(beta as i64 + 1)
}

/// Non-equivariant unstable coefficient of `q^β` in the small J-function.
pub fn unstable_coeff_noneq(beta: u32, p: &ModelParams) -> StateClass {
    let m = p.j_sector(beta);
    let mut out = StateClass::zero(p, Space::CompactType);
    let ct = p.ct_dim(m);
    if ct < 0 {
        return out;
    }
    let max = ct as usize;
    let mut acc = HSeries::constant([(1, BigRational::one())].into_iter().collect(), max);
    for i in 0..p.m() {
        let x = x_i(p, i, beta);
        for b in progression(Rational64::zero(), x, x, true, true) {
            acc = acc.mul(&HSeries::linear(-r64(b), -r64(p.q(i)), max));
        }
    }
    for _ in 0..p.n() {
        for b in 1..=beta {
            acc = acc.mul(&HSeries::inverse_linear(BigRational::from_integer(b.into()), BigRational::one(), max));
        }
    }
    for (l, c) in acc.coeffs.iter().enumerate() {
        out.insert_truncating(m, l as u32, zl_to_ratfunc(c, p.nvars()));
    }
    out
}

/// Unstable vertex coefficient at fixed point `j` as a product.
pub fn unstable_coeff_eq_factored(beta: u32, j: usize, p: &ModelParams) -> (Multiplicity, Factored) {
    let n = p.nvars();
    let z = p.z();
    let aj = p.a(j);
    let mut f = Factored::from_poly(&z);
    for i in 0..p.m() {
        let x = x_i(p, i, beta);
        let wa = aj.scale(&r64(p.q(i)));
        for b in progression(Rational64::zero(), x, x, true, true) {
            f.mul_poly(&(&z.scale(&-r64(b)) - &wa), 1).unwrap();
        }
    }
    for k in 1..=p.n() {
        let diff = &aj - &p.a(k);
        for b in 1..=beta {
            let fac = &z.scale(&BigRational::from_integer(b.into())) + &diff;
            f.mul_poly(&fac, -1).expect("nonzero for b > 0");
        }
    }
    debug_assert_eq!(f.nvars(), n);
    (p.j_sector(beta), f)
}

pub fn unstable_coeff_eq(beta: u32, j: usize, p: &ModelParams) -> EqStateClass {
    let (m, f) = unstable_coeff_eq_factored(beta, j, p);
    let mut out = EqStateClass::zero();
    out.insert(j, m, f.to_ratfunc());
    out
}

/// Coefficient `J_β` for all fixed points (equivariant) or non-equivariantly.
pub fn j_coefficient(beta: u32, p: &ModelParams, equivariant: bool) -> JCoefficient {
    let sector = p.j_sector(beta);
    if !p.epsilon.is_unstable(beta) {
        return JCoefficient { beta, sector, stability_tag: StabilityTag::StableSymbolic, value: None };
    }
    let value = if equivariant {
        let mut c = EqStateClass::zero();
        for j in 1..=p.n() {
            let (m, f) = unstable_coeff_eq_factored(beta, j, p);
            c.insert(j, m, f.to_ratfunc());
        }
        JValue::Equivariant(c)
    } else {
        JValue::NonEquivariant(unstable_coeff_noneq(beta, p))
    };
    JCoefficient { beta, sector, stability_tag: StabilityTag::Unstable, value: Some(value) }
}

/// Non-negative `z` part of the expansion at `z = 0`.
pub fn plus_part(r: &RatFunc) -> RatFunc {
    r.split_at_zero().1
}

/// `[J^ε]_+` truncated at `q^D`.
pub fn j_plus(p: &ModelParams) -> QSeries<StateClass> {
    let mut s = QSeries::zero(p.max_q_degree);
    for beta in 0..=p.max_q_degree {
        if !p.epsilon.is_unstable(beta) {
            continue;
        }
        s.add_at(beta, unstable_coeff_noneq(beta, p).map_coeffs(plus_part));
    }
    s
}

/// `z · 1_{(1/d)}`.
pub fn z_unit(p: &ModelParams) -> StateClass {
    let mut c = StateClass::zero(p, Space::CompactType);
    c.insert(p.mult(1), 0, RatFunc::var(p.nvars(), 0)).expect("unit sector");
    c
}

/// `μ^ε_β`: the `q^β` coefficient of `[J^ε]_+ - z·1`.
pub fn mu_coeff(beta: u32, p: &ModelParams) -> StateClass {
    if !p.epsilon.is_unstable(beta) {
        return StateClass::zero(p, Space::CompactType);
    }
    let plus = unstable_coeff_noneq(beta, p).map_coeffs(plus_part);
    if beta == 0 {
        return subtract(&plus, &z_unit(p), p);
    }
    plus
}

fn subtract(x: &StateClass, y: &StateClass, p: &ModelParams) -> StateClass {
    use crate::algebra::qseries::Additive;
    x.add_value(&y.map_coeffs(|c| c.neg())).truncate_ct(p)
}

/// `ν^{ε,j}_β`: the `q^β` coefficient of `[J^{ε,j}]_+ - 1^j_{(1/d)} z`.
pub fn nu_coeff(beta: u32, j: usize, p: &ModelParams) -> EqStateClass {
    if !p.epsilon.is_unstable(beta) {
        return EqStateClass::zero();
    }
    let (m, f) = unstable_coeff_eq_factored(beta, j, p);
    let mut plus = plus_part(&f.to_ratfunc());
    if beta == 0 {
        plus = plus.sub(&RatFunc::var(p.nvars(), 0));
    }
    let mut out = EqStateClass::zero();
    out.insert(j, m, plus);
    out
}

/// First sum of the `ι_*`-twisted J-function with `z ↦ -z`, truncated at `q^D`.
pub fn iota_j_unstable(p: &ModelParams) -> QSeries<StateClass> {
    let mut s = QSeries::zero(p.max_q_degree);
    for beta in 0..=p.max_q_degree {
        if p.epsilon.is_unstable(beta) {
            s.add_at(beta, iota_j_coeff(beta, p));
        }
    }
    s
}

/// `-(z/d) Π_i Π_{0≤b<X_i} (bz - (w_i/d)H) / Π_j Π_{0<b≤β} (-bz + H)`.
pub fn iota_j_coeff(beta: u32, p: &ModelParams) -> StateClass {
    let m = p.j_sector(beta);
    let mut out = StateClass::zero(p, Space::Ambient);
    let max = p.n() - 1;
    let mut acc = HSeries::constant([(1, -BigRational::new(BigInt::one(), BigInt::from(p.d)))].into_iter().collect(), max);
    for i in 0..p.m() {
        let x = x_i(p, i, beta);
        for b in progression(Rational64::zero(), x, x, false, true) {
            acc = acc.mul(&HSeries::linear(r64(b), -r64(p.q(i)), max));
        }
    }
    for _ in 0..p.n() {
        for b in 1..=beta {
            acc = acc.mul(&HSeries::inverse_linear(-BigRational::from_integer(b.into()), BigRational::one(), max));
        }
    }
    for (l, c) in acc.coeffs.iter().enumerate() {
        out.insert_truncating(m, l as u32, zl_to_ratfunc(c, p.nvars()));
    }
    out
}

/// Equivariant analogue at fixed point `j`:
/// `-(z/d) Π_i Π_{0≤b<X_i} (bz - w_i a_j/d) / Π_k Π'_{0≤b≤β} (-bz + a_j - a_k)`.
pub fn iota_j_coeff_eq(beta: u32, j: usize, p: &ModelParams) -> (Multiplicity, Factored) {
    let z = p.z();
    let aj = p.a(j);
    let mut f = Factored::from_poly(&z.scale(&-BigRational::new(BigInt::one(), BigInt::from(p.d))));
    for i in 0..p.m() {
        let x = x_i(p, i, beta);
        let wa = aj.scale(&r64(p.q(i)));
        for b in progression(Rational64::zero(), x, x, false, true) {
            f.mul_poly(&(&z.scale(&r64(b)) - &wa), 1).unwrap();
        }
    }
    for k in 1..=p.n() {
        let diff = &aj - &p.a(k);
        for b in 0..=beta {
            let fac = &z.scale(&-BigRational::from_integer(b.into())) + &diff;
            if !fac.is_zero() {
                f.mul_poly(&fac, -1).unwrap();
            }
        }
    }
    (p.j_sector(beta), f)
}

/// Degree of the `q^β` coefficient when `z`, `a_j` and `H` have degree one.
pub fn expected_degree(beta: u32, p: &ModelParams) -> i64 {
    let mut deg = 1 - (p.n() as i64) * beta as i64;
    for i in 0..p.m() {
        deg += x_i(p, i, beta).ceil().to_integer() - 1;
    }
    deg
}

/// `⟨w_i m⟩` helper shared with the localization formulas.
pub fn twist(p: &ModelParams, i: usize, m: Multiplicity) -> Rational64 {
    frac(Rational64::from_integer(p.weights[i] as i64) * m.value())
}
