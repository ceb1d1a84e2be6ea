//! Normalized rational functions in `z, a1..aN`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factored::Factored;
use super::gcd::gcd;
use super::mpoly::{var_names, MPoly};
use crate::error::{Error, Result};

/// Linear monic factors of a denominator with multiplicities.
pub type DenFactors = BTreeMap<MPoly, u32>;

/// `num/den` with `gcd(num, den) = 1`, integer coefficients of joint content
/// one, and positive leading coefficient of `den`.
///
/// When `den_factors` is present, `den = lc(den) · Π f^e` over monic linear `f`.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
    den_factors: Option<Arc<DenFactors>>,
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc {
            num: MPoly::zero(nvars),
            den: MPoly::one(nvars),
            den_factors: Some(Arc::new(BTreeMap::new())),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(MPoly::constant(nvars, c))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Self::from_poly(MPoly::var(nvars, v))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        Self::assemble(p, BigRational::one(), BTreeMap::new(), true).with_nvars_checked(n)
    }

    fn with_nvars_checked(self, n: usize) -> Self {
        debug_assert_eq!(self.num.nvars(), n);
        self
    }

    /// Normalize an arbitrary pair.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = num.nvars();
        if num.is_zero() {
            return Ok(Self::zero(n));
        }
        if let Some(factors) = split_trivial(&den) {
            let lc = den.leading_coeff();
            return Ok(Self::assemble(num, lc, factors, false));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let factors = split_trivial(&den);
        let (num, den) = canonical_scale(num, den);
        Ok(RatFunc { num, den, den_factors: factors.map(Arc::new) })
    }

    /// Build from a numerator and a denominator given as `scalar · Π f^e`
    /// with monic linear `f`. `coprime` skips the cancellation pass.
    pub fn assemble(mut num: MPoly, scalar: BigRational, mut factors: DenFactors, coprime: bool) -> Self {
        let n = num.nvars();
        assert!(!scalar.is_zero(), "zero denominator scalar");
        if num.is_zero() {
            return Self::zero(n);
        }
        if !coprime {
            cancel(&mut num, &mut factors);
        }
        let mut den = MPoly::constant(n, scalar);
        for (f, e) in &factors {
            for _ in 0..*e {
                den = &den * f;
            }
        }
        let (num, den) = canonical_scale(num, den);
        RatFunc { num, den, den_factors: Some(Arc::new(factors)) }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn den_factors(&self) -> Option<&DenFactors> {
        self.den_factors.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn involves(&self, v: usize) -> bool {
        self.num.involves(v) || self.den.involves(v)
    }

    fn den_scalar(&self) -> BigRational {
        self.den.leading_coeff()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone(), den_factors: self.den_factors.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        let (num, den) = canonical_scale(self.num.scale(c), self.den.clone());
        RatFunc { num, den, den_factors: self.den_factors.clone() }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if let (Some(fx), Some(fy)) = (&self.den_factors, &other.den_factors) {
            let mut lcm = (**fx).clone();
            for (f, e) in fy.iter() {
                let slot = lcm.entry(f.clone()).or_insert(0);
                *slot = (*slot).max(*e);
            }
            let nx = &self.num * &complement(&lcm, fx, self.nvars()).scale(&self.den_scalar().recip());
            let ny = &other.num * &complement(&lcm, fy, self.nvars()).scale(&other.den_scalar().recip());
            return Self::assemble(&nx + &ny, BigRational::one(), lcm, false);
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        Self::new(num, den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        if let (Some(fx), Some(fy)) = (&self.den_factors, &other.den_factors) {
            let mut xn = self.num.clone();
            let mut yn = other.num.clone();
            let mut fx = (**fx).clone();
            let mut fy = (**fy).clone();
            cancel(&mut xn, &mut fy);
            cancel(&mut yn, &mut fx);
            for (f, e) in fy {
                *fx.entry(f).or_insert(0) += e;
            }
            fx.retain(|_, e| *e > 0);
            let scalar = self.den_scalar() * other.den_scalar();
            return Self::assemble(&xn * &yn, scalar, fx, true);
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let xn = self.num.div_exact(&g1).unwrap();
        let yd = other.den.div_exact(&g1).unwrap();
        let yn = other.num.div_exact(&g2).unwrap();
        let xd = self.den.div_exact(&g2).unwrap();
        let num = &xn * &yn;
        let den = &xd * &yd;
        let factors = split_trivial(&den);
        let (num, den) = canonical_scale(num, den);
        RatFunc { num, den, den_factors: factors.map(Arc::new) }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let factors = split_trivial(&self.num);
        let (num, den) = canonical_scale(self.den.clone(), self.num.clone());
        Ok(RatFunc { num, den, den_factors: factors.map(Arc::new) })
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.nvars());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitute `x_v := value` (a polynomial).
    pub fn subst(&self, v: usize, value: &MPoly) -> Result<RatFunc> {
        let num = self.num.subst(v, value);
        if let Some(factors) = &self.den_factors {
            let mut den = Factored::constant(self.nvars(), self.den_scalar());
            for (f, e) in factors.iter() {
                den.mul_poly(&f.subst(v, value), *e as i32)?;
            }
            return Ok(Self::from_num_and_factored_den(num, &den));
        }
        let den = self.den.subst(v, value);
        Self::new(num, den)
    }

    /// `num / den` where `den` is a product (no positive-exponent restriction
    /// on linearity: nonlinear factors fall back to gcd normalization).
    pub fn from_num_and_factored_den(num: MPoly, den: &Factored) -> RatFunc {
        let mut linear = BTreeMap::new();
        let mut other = MPoly::one(num.nvars());
        let mut num = num;
        for (f, e) in den.factors() {
            if *e < 0 {
                num = &num * &f.pow((-e) as u32);
            } else if f.total_degree() == Some(1) {
                linear.insert(f.clone(), *e as u32);
            } else {
                other = &other * &f.pow(*e as u32);
            }
        }
        if other.is_one() {
            Self::assemble(num, den.scalar().clone(), linear, false)
        } else {
            let part = Self::assemble(num, den.scalar().clone(), linear, false);
            part.mul(&Self::new(MPoly::one(other.nvars()), other).unwrap())
        }
    }

    pub fn derivative(&self, v: usize) -> RatFunc {
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        match &self.den_factors {
            Some(f) => {
                let sq: DenFactors = f.iter().map(|(p, e)| (p.clone(), 2 * e)).collect();
                let s = self.den_scalar();
                Self::assemble(num, &s * &s, sq, false)
            }
            None => Self::new(num, &self.den * &self.den).expect("nonzero"),
        }
    }

    /// Multiplicity of the pole at `z = c` (zero when regular there).
    pub fn pole_order_z(&self, c: &MPoly) -> u32 {
        let lin = (&MPoly::var(self.nvars(), 0) - c).monic();
        if let Some(f) = &self.den_factors {
            return f.get(&lin).copied().unwrap_or(0);
        }
        let mut k = 0;
        let mut d = self.den.clone();
        while let Some(q) = d.div_exact(&lin) {
            d = q;
            k += 1;
        }
        k
    }

    /// Coefficient of `(z - c)^{-1}` in the expansion at `z = c`.
    pub fn residue_z(&self, c: &MPoly) -> Result<RatFunc> {
        if c.involves(0) {
            return Err(Error::InvalidPole(format!("pole location {c} depends on z")));
        }
        let n = self.nvars();
        let k = self.pole_order_z(c);
        if k == 0 {
            return Ok(Self::zero(n));
        }
        let lin = &MPoly::var(n, 0) - c;
        let lin_monic = lin.monic();
        // g = (z - c)^k f, regular at c
        let g = match &self.den_factors {
            Some(f) => {
                let mut rest = (**f).clone();
                rest.remove(&lin_monic);
                Self::assemble(self.num.clone(), self.den_scalar(), rest, true)
            }
            None => {
                let h = self.den.div_exact(&lin.pow(k)).expect("pole order");
                Self::new(self.num.clone(), h)?
            }
        };
        let mut g = g;
        let mut fact = BigInt::one();
        for i in 1..k {
            g = g.derivative(0);
            fact *= BigInt::from(i);
        }
        let val = g.subst(0, c)?;
        Ok(val.scale(&BigRational::from_integer(fact).recip()))
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let num = self.num.render(names);
        let den = self.den.render(names);
        let num = if self.num.len() > 1 { format!("({num})") } else { num };
        let den = if self.den.len() > 1 || den.contains('*') { format!("({den})") } else { den };
        format!("{num}/{den}")
    }

    pub fn with_nvars(&self, n: usize) -> RatFunc {
        RatFunc {
            num: self.num.with_nvars(n),
            den: self.den.with_nvars(n),
            den_factors: self
                .den_factors
                .as_ref()
                .map(|f| Arc::new(f.iter().map(|(p, e)| (p.with_nvars(n), *e)).collect())),
        }
    }

    /// Split into the parts with `z`-degree `< 0` and `>= 0` of the expansion
    /// at `z = 0`: returns `(principal, regular)`.
    pub fn split_at_zero(&self) -> (RatFunc, RatFunc) {
        let s = self.den.min_degree_in(0).unwrap_or(0) as i64;
        let r = self.num.min_degree_in(0).unwrap_or(0) as i64;
        if r >= s {
            return (Self::zero(self.nvars()), self.clone());
        }
        let exp = super::laurent::laurent(self, 0, super::laurent::Direction::AtZero, r - s, -1);
        let mut principal = Self::zero(self.nvars());
        let n = self.nvars();
        for (k, c) in exp.coeffs {
            if c.is_zero() {
                continue;
            }
            let zk = Self::assemble(
                MPoly::one(n),
                BigRational::one(),
                [(MPoly::var(n, 0), (-k) as u32)].into_iter().collect(),
                true,
            );
            principal = principal.add(&c.mul(&zk));
        }
        let regular = self.sub(&principal);
        (principal, regular)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFunc {}

impl Hash for RatFunc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&var_names(self.nvars())))
    }
}

impl From<&Factored> for RatFunc {
    fn from(f: &Factored) -> Self {
        f.to_ratfunc()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $m:ident) => {
        impl std::ops::$tr for &RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: &RatFunc) -> RatFunc {
                self.$m(rhs)
            }
        }
        impl std::ops::$tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

/// Denominator factors that can be read off without factoring:
/// constants, monomials and linear polynomials.
fn split_trivial(den: &MPoly) -> Option<DenFactors> {
    let n = den.nvars();
    if den.is_constant() {
        return Some(BTreeMap::new());
    }
    if den.len() == 1 {
        let (m, _) = den.leading().unwrap();
        return Some(
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (MPoly::var(n, v), e))
                .collect(),
        );
    }
    if den.total_degree() == Some(1) {
        return Some([(den.monic(), 1)].into_iter().collect());
    }
    None
}

/// Divide out common linear factors, decrementing multiplicities.
fn cancel(num: &mut MPoly, factors: &mut DenFactors) {
    if num.is_constant() {
        return;
    }
    for (f, e) in factors.iter_mut() {
        while *e > 0 {
            match num.div_exact(f) {
                Some(q) => {
                    *num = q;
                    *e -= 1;
                }
                None => break,
            }
        }
        if num.is_constant() {
            break;
        }
    }
    factors.retain(|_, e| *e > 0);
}

/// `Π f^{lcm_f - own_f}`.
fn complement(lcm: &DenFactors, own: &DenFactors, n: usize) -> MPoly {
    let mut out = MPoly::one(n);
    for (f, e) in lcm {
        let k = e - own.get(f).copied().unwrap_or(0);
        for _ in 0..k {
            out = &out * f;
        }
    }
    out
}

/// Scale `num/den` so all coefficients are integers with joint content one
/// and `den` has positive leading coefficient.
fn canonical_scale(num: MPoly, den: MPoly) -> (MPoly, MPoly) {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for c in num.terms().values().chain(den.terms().values()) {
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    let mut s = BigRational::new(l, g);
    if den.leading_coeff().is_negative() {
        s = -s;
    }
    if s.is_one() {
        return (num, den);
    }
    (num.scale(&s), den.scale(&s))
}
