//! State space: sector classes, pairings, `ι_*` and non-equivariant limits.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::laurent::{laurent, Direction};
use crate::algebra::parse::parse_ratfunc;
use crate::algebra::qseries::Additive;
use crate::algebra::{Factored, MPoly, RatFunc};
use crate::error::{Error, Result};
use crate::model::{big, ModelParams, Multiplicity};

/// Which powers of `H` a [`StateClass`] may carry in sector `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// `l ≤ N - 1 - |F_m|`.
    CompactType,
    /// `l ≤ N - 1`; the codomain of `ι_*`.
    Ambient,
}

/// Non-equivariant class `Σ c_{m,l} H^l_{(m)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateClass {
    space: Space,
    d: u32,
    n: usize,
    limits: Vec<i64>,
    entries: BTreeMap<(Multiplicity, u32), RatFunc>,
}

impl StateClass {
    pub fn zero(p: &ModelParams, space: Space) -> Self {
        let limits = p
            .multiplicities()
            .map(|m| match space {
                Space::CompactType => p.ct_dim(m),
                Space::Ambient => p.n() as i64 - 1,
            })
            .collect();
        StateClass { space, d: p.d, n: p.n(), limits, entries: BTreeMap::new() }
    }

    pub fn basis(p: &ModelParams, m: Multiplicity, l: u32) -> Result<Self> {
        let mut c = Self::zero(p, Space::CompactType);
        c.insert(m, l, RatFunc::one(p.nvars()))?;
        Ok(c)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn limit(&self, m: Multiplicity) -> i64 {
        self.limits[m.a() as usize]
    }

    pub fn entries(&self) -> &BTreeMap<(Multiplicity, u32), RatFunc> {
        &self.entries
    }

    pub fn get(&self, m: Multiplicity, l: u32) -> Option<&RatFunc> {
        self.entries.get(&(m, l))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Add `c · H^l_{(m)}`; powers beyond the space's limit are rejected.
    pub fn insert(&mut self, m: Multiplicity, l: u32, c: RatFunc) -> Result<()> {
        if l as i64 > self.limit(m) {
            return Err(Error::OutsideCompactType { sector: m.a(), d: self.d, power: l });
        }
        self.add_entry(m, l, c);
        Ok(())
    }

    /// Add `c · H^l_{(m)}`, silently dropping powers beyond the limit.
    pub fn insert_truncating(&mut self, m: Multiplicity, l: u32, c: RatFunc) {
        if l as i64 <= self.limit(m) {
            self.add_entry(m, l, c);
        }
    }

    fn add_entry(&mut self, m: Multiplicity, l: u32, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let v = match self.entries.remove(&(m, l)) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.entries.insert((m, l), v);
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        let mut out = StateClass { entries: BTreeMap::new(), ..self.clone() };
        for ((m, l), c) in &self.entries {
            out.add_entry(*m, *l, f(c));
        }
        out
    }

    /// Drop everything outside the compact-type range.
    pub fn truncate_ct(&self, p: &ModelParams) -> Self {
        let mut out = Self::zero(p, Space::CompactType);
        for ((m, l), c) in &self.entries {
            out.insert_truncating(*m, *l, c.clone());
        }
        out
    }

    /// Sectors that carry a nonzero entry.
    pub fn sectors(&self) -> Vec<Multiplicity> {
        let mut s: Vec<_> = self.entries.keys().map(|(m, _)| *m).collect();
        s.dedup();
        s
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|((m, l), c)| json!({"sector": m.a(), "power": l, "coeff": c.to_string()}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value, p: &ModelParams, space: Space) -> Result<Self> {
        let mut out = Self::zero(p, space);
        for rec in v.as_array().ok_or_else(|| Error::Parse("expected an array of class records".into()))? {
            let (a, l, c) = (field_u32(rec, "sector")?, field_u32(rec, "power")?, field_str(rec, "coeff")?);
            out.insert(p.mult(a as i64), l, parse_ratfunc(c, p.nvars())?)?;
        }
        Ok(out)
    }
}

impl Additive for StateClass {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_value(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((m, l), c) in &other.entries {
            out.add_entry(*m, *l, c.clone());
        }
        out
    }
}

/// Equivariant class `Σ c_{j,m} 1^j_{(m)}` in the fixed-point basis.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct EqStateClass {
    entries: BTreeMap<(usize, Multiplicity), RatFunc>,
}

impl EqStateClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(j: usize, m: Multiplicity, p: &ModelParams) -> Self {
        let mut c = Self::zero();
        c.insert(j, m, RatFunc::one(p.nvars()));
        c
    }

    /// `1_{(m)}` lifted: coefficient one at every fixed point.
    pub fn unit_lift(m: Multiplicity, p: &ModelParams) -> Self {
        let mut c = Self::zero();
        for j in 1..=p.n() {
            c.insert(j, m, RatFunc::one(p.nvars()));
        }
        c
    }

    pub fn entries(&self) -> &BTreeMap<(usize, Multiplicity), RatFunc> {
        &self.entries
    }

    pub fn get(&self, j: usize, m: Multiplicity) -> Option<&RatFunc> {
        self.entries.get(&(j, m))
    }

    /// Restriction to the fixed point `j` in sector `m` (zero if absent).
    pub fn restrict(&self, j: usize, m: Multiplicity, nvars: usize) -> RatFunc {
        self.get(j, m).cloned().unwrap_or_else(|| RatFunc::zero(nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, j: usize, m: Multiplicity, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let v = match self.entries.remove(&(j, m)) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.entries.insert((j, m), v);
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(usize, Multiplicity, &RatFunc) -> RatFunc) -> Self {
        let mut out = Self::zero();
        for ((j, m), c) in &self.entries {
            out.insert(*j, *m, f(*j, *m, c));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|((j, m), c)| json!({"sector": m.a(), "fixed_point": j, "coeff": c.to_string()}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value, p: &ModelParams) -> Result<Self> {
        let mut out = Self::zero();
        for rec in v.as_array().ok_or_else(|| Error::Parse("expected an array of class records".into()))? {
            let (a, j, c) = (field_u32(rec, "sector")?, field_u32(rec, "fixed_point")?, field_str(rec, "coeff")?);
            if j == 0 || j as usize > p.n() {
                return Err(Error::Parse(format!("fixed point {j} out of range")));
            }
            out.insert(j as usize, p.mult(a as i64), parse_ratfunc(c, p.nvars())?);
        }
        Ok(out)
    }
}

impl Additive for EqStateClass {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_value(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((j, m), c) in &other.entries {
            out.insert(*j, *m, c.clone());
        }
        out
    }
}

fn field_u32(rec: &Value, key: &str) -> Result<u32> {
    rec.get(key)
        .and_then(Value::as_u64)
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| Error::Parse(format!("missing or invalid field {key:?}")))
}

fn field_str<'a>(rec: &'a Value, key: &str) -> Result<&'a str> {
    rec.get(key).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("missing or invalid field {key:?}")))
}

/// Non-equivariant pairing of `H^{l1}_{(m1)}` and `H^{l2}_{(m2)}`.
pub fn pair_noneq(x: (Multiplicity, u32), y: (Multiplicity, u32), p: &ModelParams) -> Result<BigRational> {
    for (m, l) in [x, y] {
        if l as i64 > p.ct_dim(m) {
            return Err(Error::OutsideCompactType { sector: m.a(), d: p.d, power: l });
        }
    }
    let (m1, l1) = x;
    let (m2, l2) = y;
    if !m1.add(&m2).is_zero() || (l1 + l2) as i64 != p.ct_dim(m1) {
        return Ok(BigRational::zero());
    }
    let mut v = BigRational::new(BigInt::one(), BigInt::from(p.d));
    for i in p.broad_set(m1) {
        v *= -big(p.q(i - 1));
    }
    Ok(v)
}

/// `η^j_{(m)} = Π_{i ∈ F_m} (-w_i a_j/d) / (d Π_{j' ≠ j} (a_j - a_{j'}))`.
pub fn eta(j: usize, m: Multiplicity, p: &ModelParams) -> Factored {
    let n = p.nvars();
    let mut f = Factored::constant(n, BigRational::new(BigInt::one(), BigInt::from(p.d)));
    for i in p.broad_set(m) {
        f.mul_poly(&p.a(j).scale(&-big(p.q(i - 1))), 1).unwrap();
    }
    for k in 1..=p.n() {
        if k != j {
            f.mul_poly(&(&p.a(j) - &p.a(k)), -1).unwrap();
        }
    }
    f
}

/// Equivariant pairing of `1^{j1}_{(m1)}` and `1^{j2}_{(m2)}`: diagonal in the
/// fixed point.
pub fn pair_eq(x: (usize, Multiplicity), y: (usize, Multiplicity), p: &ModelParams) -> RatFunc {
    let (j1, m1) = x;
    let (j2, m2) = y;
    if j1 != j2 || !m1.add(&m2).is_zero() {
        return RatFunc::zero(p.nvars());
    }
    eta(j1, m1, p).to_ratfunc()
}

/// The Euler factor `(1/d) Π_{i ∈ F_m} (-(w_i/d) H)` as `(scalar, power of H)`.
pub fn iota_factor_noneq(m: Multiplicity, p: &ModelParams) -> (BigRational, u32) {
    let f = p.broad_set(m);
    let mut c = BigRational::new(BigInt::one(), BigInt::from(p.d));
    for i in &f {
        c *= -big(p.q(i - 1));
    }
    (c, f.len() as u32)
}

/// `(1/d) Π_{i ∈ F_m} (-w_i a_j/d)`.
pub fn iota_factor_eq(j: usize, m: Multiplicity, p: &ModelParams) -> Factored {
    let mut f = Factored::constant(p.nvars(), BigRational::new(BigInt::one(), BigInt::from(p.d)));
    for i in p.broad_set(m) {
        f.mul_poly(&p.a(j).scale(&-big(p.q(i - 1))), 1).unwrap();
    }
    f
}

/// `ι_*` on non-equivariant classes; the result lives in the ambient space.
pub fn iota_star(x: &StateClass, p: &ModelParams) -> StateClass {
    let mut out = StateClass::zero(p, Space::Ambient);
    for ((m, l), c) in x.entries() {
        let (s, k) = iota_factor_noneq(*m, p);
        out.insert_truncating(*m, l + k, c.scale(&s));
    }
    out
}

/// `ι_*` on equivariant classes.
pub fn iota_star_eq(x: &EqStateClass, p: &ModelParams) -> EqStateClass {
    x.map_coeffs(|j, m, c| c.mul(&iota_factor_eq(j, m, p).to_ratfunc()))
}

/// Equivariant lift of a polynomial class: `f_j = P(a_j)` where `P` is given
/// by its `H`-coefficients per sector.
pub fn lift(x: &StateClass, p: &ModelParams) -> EqStateClass {
    let mut out = EqStateClass::zero();
    for ((m, l), c) in x.entries() {
        for j in 1..=p.n() {
            out.insert(j, *m, c.mul(&RatFunc::from_poly(p.a(j).pow(*l))));
        }
    }
    out
}

/// Distinct integers used for the ray `a_j = c_j t`.
pub const LIMIT_RAY: [i64; 12] = [1, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Sector-wise Lagrange interpolation through `H = a_j` followed by the
/// limit `a_j = c_j t`, `t → 0`, truncated to compact type.
pub fn noneq_limit(x: &EqStateClass, p: &ModelParams) -> Result<StateClass> {
    let n = p.n();
    assert!(n <= LIMIT_RAY.len(), "too many fixed points for the limit ray");
    let c: Vec<BigRational> = LIMIT_RAY[..n].iter().map(|&v| BigRational::from_integer(v.into())).collect();
    // ring (z, t)
    let t = MPoly::var(2, 1);
    let mut values = vec![Some(MPoly::var(2, 0))];
    for cj in &c {
        values.push(Some(t.scale(cj)));
    }
    let mut out = StateClass::zero(p, Space::CompactType);
    let sectors: std::collections::BTreeSet<Multiplicity> = x.entries().keys().map(|(_, m)| *m).collect();
    for m in sectors {
        let fj: Vec<RatFunc> = (1..=n)
            .map(|j| subst_ratfunc(&x.restrict(j, m, p.nvars()), &values, 2))
            .collect::<Result<_>>()?;
        for l in 0..n {
            if l as i64 > p.ct_dim(m) {
                break;
            }
            // coefficient of H^l is t^{-l} Σ_j s_{j,l} f_j
            let mut g = RatFunc::zero(2);
            for (j, f) in fj.iter().enumerate() {
                let s = lagrange_weight(&c, j, l);
                if !s.is_zero() {
                    g = g.add(&f.scale(&s));
                }
            }
            let lim = t_zero_coefficient(&g, l as i64)?;
            out.insert(m, l as u32, lim.with_nvars(p.nvars()))?;
        }
    }
    Ok(out)
}

/// `[H^l] Π_{k≠j}(H - c_k) / Π_{k≠j}(c_j - c_k)`.
fn lagrange_weight(c: &[BigRational], j: usize, l: usize) -> BigRational {
    let mut poly = vec![BigRational::one()];
    let mut den = BigRational::one();
    for (k, ck) in c.iter().enumerate() {
        if k == j {
            continue;
        }
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (i, a) in poly.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * ck;
        }
        poly = next;
        den *= &c[j] - ck;
    }
    poly.get(l).cloned().unwrap_or_else(BigRational::zero) / den
}

fn t_zero_coefficient(g: &RatFunc, l: i64) -> Result<RatFunc> {
    if g.is_zero() {
        return Ok(RatFunc::zero(2));
    }
    let probe = laurent(g, 1, Direction::AtZero, l, l);
    if let Some(v) = probe.valuation {
        if v < l {
            return Err(Error::NoNonequivariantLimit(format!(
                "coefficient has order t^{} on the ray a_j = c_j t",
                v - l
            )));
        }
    }
    Ok(probe.coeffs[&l].clone())
}

/// Substitute all variables of a rational function.
pub fn subst_ratfunc(f: &RatFunc, values: &[Option<MPoly>], target: usize) -> Result<RatFunc> {
    let num = f.num().subst_all(values, target);
    match f.den_factors() {
        Some(factors) => {
            let mut den = Factored::constant(target, f.den().leading_coeff());
            for (q, e) in factors {
                den.mul_poly(&q.subst_all(values, target), *e as i32)?;
            }
            Ok(RatFunc::from_num_and_factored_den(num, &den))
        }
        None => RatFunc::new(num, f.den().subst_all(values, target)),
    }
}
