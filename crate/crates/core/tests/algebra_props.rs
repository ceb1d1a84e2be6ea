mod common;

use common::*;
use hybridwc_core::algebra::gcd::gcd;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring(f in sample(), g in sample(), h in sample()) {
        ring_axioms(&f.ratfunc(), &g.ratfunc(), &h.ratfunc())?;
    }

    #[test]
    fn normalize(f in sample()) {
        normalize_idempotent(&f.ratfunc())?;
    }

    #[test]
    fn residue_vs_laurent(f in sample()) {
        residue_matches_laurent(&f)?;
    }

    #[test]
    fn partial_fraction_sum(f in sample()) {
        partial_fractions(&f)?;
    }

    #[test]
    fn gcd_of_products(f in poly(), g in poly(), h in poly()) {
        let fh = &f * &h;
        let gh = &g * &h;
        let d = gcd(&fh, &gh);
        if !fh.is_zero() || !gh.is_zero() {
            prop_assert!(fh.div_exact(&d).is_some() && gh.div_exact(&d).is_some());
        }
        if !h.is_zero() && !(f.is_zero() && g.is_zero()) {
            prop_assert!(d.div_exact(&h).is_some(), "{} does not divide {}", h, d);
        }
    }

    #[test]
    fn factored_and_generic_agree(f in sample()) {
        let a = Sample { factored: true, ..f.clone() }.ratfunc();
        let b = Sample { factored: false, ..f }.ratfunc();
        prop_assert_eq!(a.to_string(), b.to_string());
        prop_assert_eq!(a, b);
    }
}
