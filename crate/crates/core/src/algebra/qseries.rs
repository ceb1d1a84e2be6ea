//! Truncated power series in the Novikov variable `q`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::ratfunc::RatFunc;

/// Coefficient types that can be added.
pub trait Additive: Clone {
    fn is_zero_value(&self) -> bool;
    fn add_value(&self, other: &Self) -> Self;
}

/// Coefficient types that can also be multiplied.
pub trait Multiplicative: Additive {
    fn mul_value(&self, other: &Self) -> Self;
}

impl Additive for RatFunc {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_value(&self, other: &Self) -> Self {
        self.add(other)
    }
}

impl Multiplicative for RatFunc {
    fn mul_value(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

impl Additive for BigRational {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_value(&self, other: &Self) -> Self {
        self + other
    }
}

impl Multiplicative for BigRational {
    fn mul_value(&self, other: &Self) -> Self {
        self * other
    }
}

/// `Σ_{β ≤ D} q^β c_β`; only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<T> {
    truncation: u32,
    coeffs: BTreeMap<u32, T>,
}

impl<T: Additive> QSeries<T> {
    pub fn zero(truncation: u32) -> Self {
        QSeries { truncation, coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs(truncation: u32, coeffs: impl IntoIterator<Item = (u32, T)>) -> Self {
        let mut s = Self::zero(truncation);
        for (b, c) in coeffs {
            s.add_at(b, c);
        }
        s
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, T> {
        &self.coeffs
    }

    pub fn get(&self, beta: u32) -> Option<&T> {
        self.coeffs.get(&beta)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Add `c q^β`; terms beyond the truncation are dropped.
    pub fn add_at(&mut self, beta: u32, c: T) {
        if beta > self.truncation || c.is_zero_value() {
            return;
        }
        let v = match self.coeffs.remove(&beta) {
            Some(old) => old.add_value(&c),
            None => c,
        };
        if !v.is_zero_value() {
            self.coeffs.insert(beta, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.truncation.min(other.truncation));
        for (b, c) in self.coeffs.iter().chain(&other.coeffs) {
            out.add_at(*b, c.clone());
        }
        out
    }

    pub fn truncate(&self, truncation: u32) -> Self {
        Self::from_coeffs(
            truncation.min(self.truncation),
            self.coeffs.iter().map(|(b, c)| (*b, c.clone())),
        )
    }

    pub fn map<U: Additive>(&self, f: impl Fn(u32, &T) -> U) -> QSeries<U> {
        QSeries::from_coeffs(self.truncation, self.coeffs.iter().map(|(b, c)| (*b, f(*b, c))))
    }
}

impl<T: Multiplicative> QSeries<T> {
    /// Cauchy product truncated at the smaller truncation.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.truncation.min(other.truncation));
        for (b1, c1) in &self.coeffs {
            for (b2, c2) in &other.coeffs {
                out.add_at(b1 + b2, c1.mul_value(c2));
            }
        }
        out
    }
}
