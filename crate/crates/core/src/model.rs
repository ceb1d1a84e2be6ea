//! Model parameters, stability and multiplicities.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{MPoly, RatFunc};
use crate::error::{Error, Result};

/// Stability parameter ε.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Epsilon {
    ZeroPlus,
    Finite(BigRational),
    Infinity,
}

impl Epsilon {
    /// `β ≤ 1/ε`.
    pub fn is_unstable(&self, beta: u32) -> bool {
        match self {
            Epsilon::ZeroPlus => true,
            Epsilon::Infinity => beta == 0,
            Epsilon::Finite(e) => e * BigRational::from_integer(beta.into()) <= BigRational::one(),
        }
    }

    /// Largest unstable degree, `None` when unbounded.
    pub fn max_unstable(&self) -> Option<u32> {
        match self {
            Epsilon::ZeroPlus => None,
            Epsilon::Infinity => Some(0),
            Epsilon::Finite(e) => Some(e.recip().floor().to_integer().to_u32().unwrap_or(u32::MAX)),
        }
    }

    /// `β > 1/ε` for a rational degree (used on real-valued vertex degrees).
    pub fn one_over(&self) -> Option<BigRational> {
        match self {
            Epsilon::ZeroPlus => None,
            Epsilon::Infinity => Some(BigRational::zero()),
            Epsilon::Finite(e) => Some(e.recip()),
        }
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "0+" => return Ok(Epsilon::ZeroPlus),
            "inf" => return Ok(Epsilon::Infinity),
            _ => {}
        }
        let bad = || Error::InvalidModel(format!("malformed epsilon {s:?}; expected \"0+\", \"p/q\", an integer or \"inf\""));
        let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
        let (p, q) = match t.split_once('/') {
            Some((p, q)) if digits(p) && digits(q) => (p, q),
            None if digits(t) => (t, "1"),
            _ => return Err(bad()),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() || p.is_zero() {
            return Err(Error::InvalidModel(format!("epsilon must be positive, got {s:?}")));
        }
        Ok(Epsilon::Finite(BigRational::new(p, q)))
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Epsilon::ZeroPlus => f.write_str("0+"),
            Epsilon::Infinity => f.write_str("inf"),
            Epsilon::Finite(e) => write!(f, "{e}"),
        }
    }
}

impl Serialize for Epsilon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Epsilon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Multiplicity `m = a/d` with `0 ≤ a < d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiplicity {
    a: u32,
    d: u32,
}

impl Multiplicity {
    pub fn new(a: i64, d: u32) -> Self {
        Multiplicity { a: a.rem_euclid(d as i64) as u32, d }
    }

    pub fn from_rational(x: Rational64, d: u32) -> Self {
        let y = x * Rational64::from_integer(d as i64);
        assert!(y.is_integer(), "{x} is not a multiple of 1/{d}");
        Self::new(y.to_integer(), d)
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn value(&self) -> Rational64 {
        Rational64::new(self.a as i64, self.d as i64)
    }

    pub fn neg(&self) -> Self {
        Self::new(-(self.a as i64), self.d)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.a as i64 + other.a as i64, self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.d)
    }
}

/// Fractional part `⟨x⟩ ∈ [0, 1)`.
pub fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

/// `b` with `⟨b⟩ = ⟨f⟩` between `lo` and `hi`, endpoints included or not.
pub fn progression(lo: Rational64, hi: Rational64, f: Rational64, lo_strict: bool, hi_strict: bool) -> Vec<Rational64> {
    let f = frac(f);
    let mut b = lo.floor() + f - Rational64::one();
    let mut out = Vec::new();
    while b <= hi {
        let ok_lo = if lo_strict { b > lo } else { b >= lo };
        let ok_hi = if hi_strict { b < hi } else { b <= hi };
        if ok_lo && ok_hi {
            out.push(b);
        }
        b += Rational64::one();
    }
    out
}

pub fn big(x: Rational64) -> BigRational {
    BigRational::new((*x.numer()).into(), (*x.denom()).into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelParams {
    pub weights: Vec<u32>,
    pub d: u32,
    pub num_polys: usize,
    pub epsilon: Epsilon,
    pub max_q_degree: u32,
}

impl ModelParams {
    pub fn new(weights: Vec<u32>, d: u32, num_polys: usize, epsilon: Epsilon, max_q_degree: u32) -> Result<Self> {
        let p = ModelParams { weights, d, num_polys, epsilon, max_q_degree };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.is_empty() {
            return Err(Error::InvalidModel("at least one weight is required".into()));
        }
        if self.d == 0 {
            return Err(Error::InvalidModel("degree d must be positive".into()));
        }
        if self.num_polys == 0 {
            return Err(Error::InvalidModel("num_polys must be positive".into()));
        }
        for &w in &self.weights {
            if w == 0 || !self.d.is_multiple_of(w) {
                return Err(Error::InvalidModel(format!("weight {w} does not divide d = {}", self.d)));
            }
        }
        if let Epsilon::Finite(e) = &self.epsilon {
            if !e.is_positive() {
                return Err(Error::InvalidModel("epsilon must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn with_epsilon(&self, epsilon: Epsilon) -> Self {
        ModelParams { epsilon, ..self.clone() }
    }

    pub fn with_max_q_degree(&self, d: u32) -> Self {
        ModelParams { max_q_degree: d, ..self.clone() }
    }

    /// The quintic: `M = 5`, `w = 1`, `d = 5`, `N = 1`.
    pub fn quintic() -> Self {
        Self::new(vec![1; 5], 5, 1, Epsilon::ZeroPlus, 10).unwrap()
    }

    /// Two cubics: `M = 6`, `w = 1`, `d = 3`, `N = 2`.
    pub fn cubic_pair() -> Self {
        Self::new(vec![1; 6], 3, 2, Epsilon::ZeroPlus, 10).unwrap()
    }

    /// Four quadrics: `M = 8`, `w = 1`, `d = 2`, `N = 4`.
    pub fn quadric_quadruple() -> Self {
        Self::new(vec![1; 8], 2, 4, Epsilon::ZeroPlus, 10).unwrap()
    }

    /// `d = 4`, `w = (1,1,2,2)`, `N = 2`.
    pub fn weighted_quartic_pair() -> Self {
        Self::new(vec![1, 1, 2, 2], 4, 2, Epsilon::ZeroPlus, 10).unwrap()
    }

    pub fn m(&self) -> usize {
        self.weights.len()
    }

    pub fn n(&self) -> usize {
        self.num_polys
    }

    /// Number of polynomial variables: `z, a1..aN`.
    pub fn nvars(&self) -> usize {
        self.num_polys + 1
    }

    pub fn mult(&self, a: i64) -> Multiplicity {
        Multiplicity::new(a, self.d)
    }

    pub fn mult_of(&self, x: Rational64) -> Multiplicity {
        Multiplicity::from_rational(frac(x), self.d)
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = Multiplicity> + '_ {
        (0..self.d as i64).map(move |a| self.mult(a))
    }

    /// `w_i / d`.
    pub fn q(&self, i: usize) -> Rational64 {
        Rational64::new(self.weights[i] as i64, self.d as i64)
    }

    /// Broad set `F_m = {i : d | a w_i}` with 1-based indices.
    pub fn broad_set(&self, m: Multiplicity) -> Vec<usize> {
        (0..self.m())
            .filter(|&i| (m.a() as u64 * self.weights[i] as u64).is_multiple_of(self.d as u64))
            .map(|i| i + 1)
            .collect()
    }

    /// `N - 1 - |F_m|`; negative when the sector carries nothing.
    pub fn ct_dim(&self, m: Multiplicity) -> i64 {
        self.num_polys as i64 - 1 - self.broad_set(m).len() as i64
    }

    /// Sector of the degree-β coefficient of the J-function, `⟨(β+1)/d⟩`.
    pub fn j_sector(&self, beta: u32) -> Multiplicity {
        self.mult(beta as i64 + 1)
    }

    /// The variable `a_j` (1-based) as a polynomial.
    pub fn a(&self, j: usize) -> MPoly {
        assert!((1..=self.num_polys).contains(&j), "fixed point {j} out of range");
        MPoly::var(self.nvars(), j)
    }

    pub fn z(&self) -> MPoly {
        MPoly::var(self.nvars(), 0)
    }

    pub fn constant(&self, c: BigRational) -> MPoly {
        MPoly::constant(self.nvars(), c)
    }

    pub fn ratfunc_zero(&self) -> RatFunc {
        RatFunc::zero(self.nvars())
    }

    /// Short description used in reports.
    pub fn label(&self) -> String {
        let w: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        format!("w=({}) d={} N={}", w.join(","), self.d, self.num_polys)
    }
}
