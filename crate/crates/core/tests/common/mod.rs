//! Random rational functions in `z, a1, a2` and the algebraic laws they obey.
#![allow(dead_code)]

use hybridwc_core::algebra::parse::parse_ratfunc;
use hybridwc_core::algebra::{int, laurent, Direction, Factored, MPoly, Mono, RatFunc};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const NVARS: usize = 3;

pub fn linear_form() -> impl Strategy<Value = MPoly> {
    (-4i64..=4, -2i64..=2, -2i64..=2).prop_map(|(c, x, y)| {
        MPoly::linear(NVARS, int(c), &[(1, int(x)), (2, int(y))])
    })
}

pub fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..=3, 0u32..=1, 0u32..=1), -5i64..=5), 0..4).prop_map(|terms| {
        MPoly::from_terms(NVARS, terms.into_iter().map(|((a, b, c), k)| (Mono(vec![a, b, c]), int(k))))
    })
}

/// Numerator and distinct poles in `z` with multiplicities.
#[derive(Clone, Debug)]
pub struct Sample {
    pub num: MPoly,
    pub poles: Vec<(MPoly, u32)>,
    pub factored: bool,
}

impl Sample {
    pub fn ratfunc(&self) -> RatFunc {
        let z = MPoly::var(NVARS, 0);
        if self.factored {
            let mut den = Factored::one(NVARS);
            for (c, e) in &self.poles {
                den.mul_poly(&(&z - c), *e as i32).unwrap();
            }
            RatFunc::from_num_and_factored_den(self.num.clone(), &den)
        } else {
            let mut den = MPoly::one(NVARS);
            for (c, e) in &self.poles {
                den = &den * &(&z - c).pow(*e);
            }
            RatFunc::new(self.num.clone(), den).unwrap()
        }
    }
}

pub fn sample() -> impl Strategy<Value = Sample> {
    (poly(), prop::collection::vec((linear_form(), 1u32..=2), 0..3), any::<bool>()).prop_map(|(num, raw, factored)| {
        let mut poles: Vec<(MPoly, u32)> = Vec::new();
        for (c, e) in raw {
            if poles.iter().all(|(d, _)| *d != c) {
                poles.push((c, e));
            }
        }
        Sample { num, poles, factored }
    })
}

type Law = std::result::Result<(), TestCaseError>;

pub fn ring_axioms(f: &RatFunc, g: &RatFunc, h: &RatFunc) -> Law {
    prop_assert_eq!(f.add(g).add(h), f.add(&g.add(h)));
    prop_assert_eq!(f.add(g), g.add(f));
    prop_assert_eq!(f.mul(g), g.mul(f));
    prop_assert_eq!(f.mul(g).mul(h), f.mul(&g.mul(h)));
    prop_assert_eq!(f.mul(&g.add(h)), f.mul(g).add(&f.mul(h)));
    prop_assert!(f.sub(f).is_zero());
    prop_assert_eq!(f.mul(&RatFunc::one(NVARS)), f.clone());
    if !f.is_zero() {
        prop_assert!(f.mul(&f.inv().unwrap()).is_one());
    }
    Ok(())
}

/// Rebuilding from numerator and denominator, or from the canonical
/// string, changes nothing.
pub fn normalize_idempotent(f: &RatFunc) -> Law {
    let again = RatFunc::new(f.num().clone(), f.den().clone()).unwrap();
    prop_assert_eq!(&again, f);
    prop_assert_eq!(again.num(), f.num());
    prop_assert_eq!(again.den(), f.den());
    let s = f.to_string();
    let back = parse_ratfunc(&s, NVARS).unwrap();
    prop_assert_eq!(&back, f);
    prop_assert_eq!(back.to_string(), s);
    Ok(())
}

fn shifted(f: &RatFunc, c: &MPoly) -> RatFunc {
    f.subst(0, &(&MPoly::var(NVARS, 0) + c)).unwrap()
}

/// Residue at each pole equals the `z^{-1}` coefficient of the expansion
/// of `f(z + c)` at zero.
pub fn residue_matches_laurent(s: &Sample) -> Law {
    let f = s.ratfunc();
    for (c, _) in &s.poles {
        let r = f.residue_z(c).unwrap();
        let l = laurent(&shifted(&f, c), 0, Direction::AtZero, -1, -1);
        prop_assert_eq!(&r, &l.coeffs[&-1]);
    }
    Ok(())
}

/// `f` is its polynomial part plus the principal parts at its poles.
pub fn partial_fractions(s: &Sample) -> Law {
    let f = s.ratfunc();
    let z = MPoly::var(NVARS, 0);
    let deg = f.num().degree_in(0).unwrap_or(0) as i64 - f.den().degree_in(0).unwrap_or(0) as i64;
    let mut total = RatFunc::zero(NVARS);
    if deg >= 0 {
        let at_inf = laurent(&f, 0, Direction::AtInfinity, 0, deg);
        for (k, c) in &at_inf.coeffs {
            total = total.add(&c.mul(&RatFunc::from_poly(z.pow(*k as u32))));
        }
    }
    for (c, e) in &s.poles {
        let lin = RatFunc::from_poly(&z - c);
        let l = laurent(&shifted(&f, c), 0, Direction::AtZero, -(*e as i64), -1);
        for (k, a) in &l.coeffs {
            total = total.add(&a.mul(&lin.pow(*k as i32).unwrap()));
        }
    }
    prop_assert_eq!(total, f);
    Ok(())
}
