//! Products of polynomial factors with integer exponents.
//!
//! Every closed formula in the engine is a product of linear forms, so the
//! natural intermediate representation is `scalar · Π f^e` with monic `f`.
//! Linear factors are irreducible, which makes equality of all-linear
//! products a structural comparison.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Factored {
    nvars: usize,
    scalar: BigRational,
    factors: BTreeMap<MPoly, i32>,
}

impl Factored {
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn zero(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::zero())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Factored { nvars, scalar: c, factors: BTreeMap::new() }
    }

    pub fn from_poly(p: &MPoly) -> Self {
        let mut f = Self::one(p.nvars());
        f.mul_poly(p, 1).expect("positive exponent");
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn factors(&self) -> &BTreeMap<MPoly, i32> {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// True when every factor has total degree one.
    pub fn is_linear(&self) -> bool {
        self.factors.keys().all(|f| f.total_degree() == Some(1))
    }

    /// Multiply by `p^e`.
    pub fn mul_poly(&mut self, p: &MPoly, e: i32) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        if let Some(c) = p.as_constant() {
            if c.is_zero() {
                if e < 0 {
                    return Err(Error::DivisionByZero);
                }
                *self = Self::zero(self.nvars);
                return Ok(());
            }
            self.scalar *= pow_rat(&c, e);
            return Ok(());
        }
        if self.is_zero() {
            return Ok(());
        }
        let lc = p.leading_coeff();
        self.scalar *= pow_rat(&lc, e);
        let m = p.monic();
        let slot = self.factors.entry(m.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&m);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Factored) -> Factored {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        for (f, e) in &other.factors {
            let slot = out.factors.entry(f.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                out.factors.remove(f);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Factored {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        out.scalar *= c;
        out
    }

    pub fn inv(&self) -> Result<Factored> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Factored {
            nvars: self.nvars,
            scalar: self.scalar.recip(),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect(),
        })
    }

    pub fn div(&self, other: &Factored) -> Result<Factored> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Factored> {
        if e < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if e == 0 {
            return Ok(Self::one(self.nvars));
        }
        Ok(Factored {
            nvars: self.nvars,
            scalar: pow_rat(&self.scalar, e),
            factors: self.factors.iter().map(|(f, x)| (f.clone(), x * e)).collect(),
        })
    }

    /// Substitute `x_v := value` factor by factor.
    pub fn subst(&self, v: usize, value: &MPoly) -> Result<Factored> {
        let mut out = Self::constant(self.nvars, self.scalar.clone());
        for (f, e) in &self.factors {
            out.mul_poly(&f.subst(v, value), *e)?;
        }
        Ok(out)
    }

    /// Substitute several variables; the result lives in `target_nvars` variables.
    pub fn subst_all(&self, values: &[Option<MPoly>], target_nvars: usize) -> Result<Factored> {
        let mut out = Self::constant(target_nvars, self.scalar.clone());
        for (f, e) in &self.factors {
            out.mul_poly(&f.subst_all(values, target_nvars), *e)?;
        }
        Ok(out)
    }

    /// Exponent of the monic factor `z - c` (negative for a pole).
    pub fn order_at(&self, c: &MPoly) -> i32 {
        let lin = (&MPoly::var(self.nvars, 0) - c).monic();
        self.factors.get(&lin).copied().unwrap_or(0)
    }

    /// Residue in `z` at `z = c` when the pole there is at most simple.
    /// Returns `Ok(None)` for a higher-order pole.
    pub fn residue_z_simple(&self, c: &MPoly) -> Result<Option<Factored>> {
        if c.involves(0) {
            return Err(Error::InvalidPole(format!("pole location {c} depends on z")));
        }
        let lin = (&MPoly::var(self.nvars, 0) - c).monic();
        match self.factors.get(&lin).copied().unwrap_or(0) {
            e if e >= 0 => Ok(Some(Self::zero(self.nvars))),
            -1 => {
                let mut rest = self.clone();
                rest.factors.remove(&lin);
                rest.subst(0, c).map(Some)
            }
            _ => Ok(None),
        }
    }

    /// Expanded `(numerator, denominator)` without content normalization.
    pub fn expand(&self) -> (MPoly, MPoly) {
        let mut num = MPoly::constant(self.nvars, self.scalar.clone());
        let mut den = MPoly::one(self.nvars);
        for (f, e) in &self.factors {
            if *e > 0 {
                num = &num * &f.pow(*e as u32);
            } else {
                den = &den * &f.pow((-e) as u32);
            }
        }
        (num, den)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero(self.nvars);
        }
        let mut num = MPoly::constant(self.nvars, self.scalar.clone());
        let mut den = BTreeMap::new();
        let mut den_linear = true;
        let mut num_linear = true;
        for (f, e) in &self.factors {
            let linear = f.total_degree() == Some(1);
            if *e > 0 {
                num_linear &= linear;
                num = &num * &f.pow(*e as u32);
            } else {
                den_linear &= linear;
                den.insert(f.clone(), (-e) as u32);
            }
        }
        if den_linear {
            RatFunc::assemble(num, BigRational::one(), den, num_linear)
        } else {
            let mut d = MPoly::one(self.nvars);
            for (f, e) in &den {
                d = &d * &f.pow(*e);
            }
            RatFunc::new(num, d).expect("nonzero factors")
        }
    }
}

impl PartialEq for Factored {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.is_linear() && other.is_linear() {
            return self.scalar == other.scalar && self.factors == other.factors;
        }
        self.to_ratfunc() == other.to_ratfunc()
    }
}

pub fn pow_rat(c: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow::pow(c.clone(), e as usize)
    } else {
        num_traits::pow::pow(c.recip(), (-e) as usize)
    }
}
