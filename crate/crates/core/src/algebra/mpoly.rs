//! Sparse multivariate polynomials over `BigRational`.
//!
//! Variables are indexed `0..nvars`; index 0 is `z` and index `k` is `a_k`.
//! Terms are kept in a `BTreeMap` ordered graded-lexicographically, so the
//! last entry is the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector with graded-lex ordering (variable 0 is the largest).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, v: usize, e: u32) -> Self {
        let mut m = vec![0; n];
        m[v] = e;
        Mono(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Mono, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Self::monomial(nvars, Mono::var(nvars, v, 1), BigRational::one())
    }

    pub fn monomial(nvars: usize, m: Mono, c: BigRational) -> Self {
        debug_assert_eq!(m.0.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `c0 + Σ c_v x_v`.
    pub fn linear(nvars: usize, c0: BigRational, coeffs: &[(usize, BigRational)]) -> Self {
        let mut p = Self::constant(nvars, c0);
        for (v, c) in coeffs {
            p.add_term(Mono::var(nvars, *v, 1), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Mono, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    pub fn min_degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).min()
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, mono: &Mono, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.mul(mono), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative in variable `v`.
    pub fn derivative(&self, v: usize) -> MPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e > 0 {
                let mut mm = m.clone();
                mm.0[v] -= 1;
                out.add_term(mm, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Coefficients as a polynomial in `v`: entry `k` multiplies `x_v^k`.
    pub fn to_univariate(&self, v: usize) -> Vec<MPoly> {
        let deg = match self.degree_in(v) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[v] as usize;
            let mut mm = m.clone();
            mm.0[v] = 0;
            out[k].terms.insert(mm, c.clone());
        }
        out
    }

    pub fn from_univariate(nvars: usize, v: usize, coeffs: &[MPoly]) -> MPoly {
        let mut out = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                let mut mm = m.clone();
                mm.0[v] += k as u32;
                out.add_term(mm, x.clone());
            }
        }
        out
    }

    /// Substitute `x_v := value`.
    pub fn subst(&self, v: usize, value: &MPoly) -> MPoly {
        if !self.involves(v) {
            return self.clone();
        }
        let coeffs = self.to_univariate(v);
        // Horner
        let mut acc = Self::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Substitute several variables at once; `values[v]` of `None` keeps `x_v`.
    pub fn subst_all(&self, values: &[Option<MPoly>], target_nvars: usize) -> MPoly {
        let mut powers: Vec<Vec<MPoly>> = vec![Vec::new(); values.len()];
        let mut out = Self::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target_nvars, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let val = match &values[v] {
                    Some(p) => p.clone(),
                    None => Self::var(target_nvars, v),
                };
                let pw = &mut powers[v];
                if pw.is_empty() {
                    pw.push(Self::one(target_nvars));
                }
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap() * &val;
                    pw.push(next);
                }
                t = &t * &pw[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Evaluate variable `v` at a rational constant.
    pub fn eval_var(&self, v: usize, value: &BigRational) -> MPoly {
        self.subst(v, &Self::constant(self.nvars, value.clone()))
    }

    /// Shift `x_v -> x_v + c`.
    pub fn shift(&self, v: usize, c: &MPoly) -> MPoly {
        let sub = &Self::var(self.nvars, v) + c;
        self.subst(v, &sub)
    }

    /// `Some(q)` if `self = q * other` exactly.
    pub fn div_exact(&self, other: &MPoly) -> Option<MPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if let Some(c) = other.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = other.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        if self.total_degree() < other.total_degree() {
            return None;
        }
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            for (om, oc) in &other.terms {
                r.add_term(om.mul(&qm), -(oc * &qc));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// lcm of coefficient denominators over gcd of coefficient numerators.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    /// Integer coefficients with content one and positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Leading coefficient one.
    pub fn monic(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn with_nvars(&self, nvars: usize) -> MPoly {
        if nvars == self.nvars {
            return self.clone();
        }
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            if nvars < self.nvars {
                assert!(e[nvars..].iter().all(|&x| x == 0), "dropping a used variable");
            }
            e.resize(nvars, 0);
            out.terms.insert(Mono(e), c.clone());
        }
        out
    }

    /// Render with the given variable names, leading term first.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            if factors.is_empty() || !a.is_one() {
                factors.insert(0, a.to_string());
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

pub fn var_names(nvars: usize) -> Vec<String> {
    let mut v = vec!["z".to_string()];
    v.extend((1..nvars).map(|k| format!("a{k}")));
    v
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&var_names(self.nvars)))
    }
}

impl std::ops::Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl std::ops::Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero(self.nvars);
        }
        if self.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return rhs.mul_mono(m, c);
        }
        if rhs.len() == 1 {
            let (m, c) = rhs.terms.iter().next().unwrap();
            return self.mul_mono(m, c);
        }
        let mut acc: std::collections::HashMap<Mono, BigRational> =
            std::collections::HashMap::with_capacity(self.len() * rhs.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let p = c1 * c2;
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += p;
                    }
                }
            }
        }
        MPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl std::ops::$tr for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                std::ops::$tr::$f(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}
