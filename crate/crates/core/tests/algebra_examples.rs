use hybridwc_core::algebra::parse::{parse_poly, parse_ratfunc};
use hybridwc_core::algebra::qseries::QSeries;
use hybridwc_core::algebra::{int, laurent_z, rat, residue_z, Direction, MPoly, RatFunc};
use hybridwc_core::Error;

const N: usize = 3; // z, a1, a2

fn rf(s: &str) -> RatFunc {
    parse_ratfunc(s, N).unwrap()
}

fn poly(s: &str) -> MPoly {
    parse_poly(s, N).unwrap()
}

#[test]
fn normalize_difference_of_squares() {
    let r = RatFunc::new(poly("z^2 - a1^2"), poly("z - a1")).unwrap();
    assert_eq!(r.to_string(), "(z + a1)/1");
}

#[test]
fn normalize_zero_numerator() {
    let r = RatFunc::new(MPoly::zero(N), poly("z + a1")).unwrap();
    assert_eq!(r.to_string(), "0/1");
}

#[test]
fn normalize_content() {
    let r = RatFunc::new(poly("2*z + 2"), poly("4")).unwrap();
    assert_eq!(r.to_string(), "(z + 1)/2");
}

#[test]
fn normalize_rejects_zero_denominator() {
    assert_eq!(RatFunc::new(poly("z"), MPoly::zero(N)), Err(Error::DivisionByZero));
}

#[test]
fn normalize_negative_leading_denominator() {
    let r = RatFunc::new(poly("1"), poly("-3*a1 + 3*a2")).unwrap();
    assert_eq!(r.to_string(), "-1/(3*a1 - 3*a2)");
}

#[test]
fn residue_simple_unit() {
    assert_eq!(residue_z(&rf("1/(z - a1)"), &poly("a1")).unwrap().to_string(), "1/1");
}

#[test]
fn residue_partial_fraction() {
    let f = rf("z/((z - a1)*(z - a2))");
    let r = residue_z(&f, &poly("a1")).unwrap();
    assert_eq!(r, rf("a1/(a1 - a2)"));
    assert_eq!(r.to_string(), "a1/(a1 - a2)");
}

#[test]
fn residue_of_polynomial_is_zero() {
    assert!(residue_z(&rf("z + a1"), &poly("a2")).unwrap().is_zero());
}

#[test]
fn residue_rejects_z_dependent_pole() {
    assert!(matches!(residue_z(&rf("1/(z - a1)"), &poly("z")), Err(Error::InvalidPole(_))));
}

#[test]
fn residue_higher_order() {
    // z^2/(z - a1)^3 : residue = 1
    let f = RatFunc::new(poly("z^2"), poly("(z - a1)^3")).unwrap();
    assert_eq!(residue_z(&f, &poly("a1")).unwrap(), rf("1"));
    // 1/((z - a1)^2 (z - a2)) : residue = -1/(a1 - a2)^2
    let g = RatFunc::new(poly("1"), poly("(z - a1)^2*(z - a2)")).unwrap();
    assert_eq!(residue_z(&g, &poly("a1")).unwrap(), rf("-1/(a1 - a2)^2"));
}

#[test]
fn laurent_geometric_at_zero() {
    let l = laurent_z(&rf("1/(z + a1)"), Direction::AtZero, 0, 1);
    assert_eq!(l.coeffs[&0], rf("1/a1"));
    assert_eq!(l.coeffs[&1], rf("-1/a1^2"));
}

#[test]
fn laurent_geometric_at_infinity() {
    let l = laurent_z(&rf("1/(z + a1)"), Direction::AtInfinity, -2, -1);
    assert_eq!(l.coeffs[&-1], rf("1"));
    assert_eq!(l.coeffs[&-2], rf("-a1"));
}

#[test]
fn laurent_regular_at_zero() {
    let l = laurent_z(&rf("z^2/(z - a1)"), Direction::AtZero, -1, 0);
    assert!(l.coeffs[&-1].is_zero());
    assert!(l.coeffs[&0].is_zero());
    assert!(l.is_pole_free());
}

#[test]
fn laurent_pole_at_zero() {
    let l = laurent_z(&rf("(z + a1)/z^2"), Direction::AtZero, -3, 1);
    assert_eq!(l.valuation, Some(-2));
    assert!(!l.is_pole_free());
    assert!(l.coeffs[&-3].is_zero());
    assert_eq!(l.coeffs[&-2], rf("a1"));
    assert_eq!(l.coeffs[&-1], rf("1"));
    assert!(l.coeffs[&0].is_zero());
}

fn q(coeffs: &[(u32, i64)], d: u32) -> QSeries<num_rational::BigRational> {
    QSeries::from_coeffs(d, coeffs.iter().map(|(b, c)| (*b, int(*c))))
}

#[test]
fn qseries_examples() {
    assert_eq!(q(&[(0, 1), (1, 1)], 2).mul(&q(&[(0, 1), (1, -1)], 2)), q(&[(0, 1), (2, -1)], 2));
    let geo = q(&[(0, 1), (1, 1), (2, 1), (3, 1)], 3);
    assert_eq!(geo.mul(&q(&[(0, 1)], 1)), q(&[(0, 1), (1, 1)], 1));
    let prod = q(&[(1, 1)], 1).mul(&q(&[(1, 1)], 1));
    assert!(prod.is_zero());
    assert_eq!(prod.truncation(), 1);
}

#[test]
fn canonical_strings_round_trip() {
    for s in ["(z + a1)/1", "-1/375000", "1/(3*a1 - 3*a2)", "a1/(a1 - a2)", "(z^2 - 2*z*a1 + 7)/(a1*a2)"] {
        assert_eq!(rf(s).to_string(), s);
    }
    assert_eq!(rf("1/2").as_constant(), Some(rat(1, 2)));
}
