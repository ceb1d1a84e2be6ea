//! Laurent expansion of a rational function in one variable.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::factored::Factored;
use super::mpoly::MPoly;
use super::ratfunc::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    AtZero,
    AtInfinity,
}

#[derive(Clone, Debug)]
pub struct Laurent {
    pub direction: Direction,
    /// Extreme exponent with a nonzero coefficient: the lowest at zero, the
    /// highest at infinity (`None` for the zero function).
    pub valuation: Option<i64>,
    pub coeffs: BTreeMap<i64, RatFunc>,
}

impl Laurent {
    pub fn is_pole_free(&self) -> bool {
        match self.direction {
            Direction::AtZero => self.valuation.is_none_or(|v| v >= 0),
            Direction::AtInfinity => self.valuation.is_none_or(|v| v <= 0),
        }
    }
}

/// Coefficients of `x_v^k`, `k_min <= k <= k_max`, of the expansion of `f`
/// at `x_v = 0` or at `x_v = ∞`. Coefficients do not involve `x_v`.
pub fn laurent(f: &RatFunc, v: usize, dir: Direction, k_min: i64, k_max: i64) -> Laurent {
    let n = f.nvars();
    let mut coeffs = BTreeMap::new();
    if f.is_zero() {
        for k in k_min..=k_max {
            coeffs.insert(k, RatFunc::zero(n));
        }
        return Laurent { direction: dir, valuation: None, coeffs };
    }
    let nc = f.num().to_univariate(v);
    let dc = f.den().to_univariate(v);
    // f = x^shift * N(x)/D(x), D(0) != 0, in the local coordinate x
    let (ncoef, dcoef, shift, d0) = match dir {
        Direction::AtZero => {
            let r = nc.iter().position(|c| !c.is_zero()).unwrap();
            let s = dc.iter().position(|c| !c.is_zero()).unwrap();
            let d0 = lowest_den_coeff(f, v, s);
            (nc[r..].to_vec(), dc[s..].to_vec(), r as i64 - s as i64, d0)
        }
        Direction::AtInfinity => {
            // x = 1/y: f = y^{deg D - deg N} Ñ(y)/D̃(y)
            let mut nr = nc.clone();
            nr.reverse();
            let mut dr = dc.clone();
            dr.reverse();
            let d0 = leading_den_coeff(f, v);
            (nr, dr, dc.len() as i64 - nc.len() as i64, d0)
        }
    };
    let d0_inv = d0.inv().expect("nonzero lowest coefficient");
    // the local exponent t maps to the requested exponent k
    let to_local = |k: i64| match dir {
        Direction::AtZero => k - shift,
        Direction::AtInfinity => -k - shift,
    };
    let hi = match dir {
        Direction::AtZero => to_local(k_max),
        Direction::AtInfinity => to_local(k_min),
    };
    let mut series: Vec<RatFunc> = Vec::new();
    if hi >= 0 {
        for t in 0..=hi as usize {
            let mut acc = ncoef.get(t).map(|c| RatFunc::from_poly(c.clone())).unwrap_or_else(|| RatFunc::zero(n));
            for i in 1..=t.min(dcoef.len().saturating_sub(1)) {
                if dcoef[i].is_zero() {
                    continue;
                }
                let term = series[t - i].mul(&RatFunc::from_poly(dcoef[i].clone()));
                acc = acc.sub(&term);
            }
            series.push(acc.mul(&d0_inv));
        }
    }
    for k in k_min..=k_max {
        let t = to_local(k);
        let c = if t < 0 { RatFunc::zero(n) } else { series[t as usize].clone() };
        coeffs.insert(k, c);
    }
    let valuation = Some(match dir {
        Direction::AtZero => shift,
        Direction::AtInfinity => -shift,
    });
    Laurent { direction: dir, valuation, coeffs }
}

/// The coefficient of `x_v^s` in the denominator as a rational function with
/// known factorization when the denominator's factors are known.
fn lowest_den_coeff(f: &RatFunc, v: usize, s: usize) -> RatFunc {
    let n = f.nvars();
    if let Some(factors) = f.den_factors() {
        let xv = MPoly::var(n, v);
        let mut prod = Factored::constant(n, f.den().leading_coeff());
        for (p, e) in factors {
            if *p == xv {
                continue;
            }
            prod.mul_poly(&p.eval_var(v, &BigRational::from_integer(0.into())), *e as i32)
                .expect("nonzero at the expansion point");
        }
        return prod.to_ratfunc();
    }
    RatFunc::from_poly(f.den().to_univariate(v)[s].clone())
}

fn leading_den_coeff(f: &RatFunc, v: usize) -> RatFunc {
    let n = f.nvars();
    if let Some(factors) = f.den_factors() {
        let mut prod = Factored::constant(n, f.den().leading_coeff());
        for (p, e) in factors {
            let lc = if p.involves(v) {
                let u = p.to_univariate(v);
                u.last().unwrap().clone()
            } else {
                p.clone()
            };
            prod.mul_poly(&lc, *e as i32).expect("nonzero leading coefficient");
        }
        return prod.to_ratfunc();
    }
    RatFunc::from_poly(f.den().to_univariate(v).last().unwrap().clone())
}
