use hybridwc_core::algebra::parse::parse_ratfunc;
use hybridwc_core::algebra::{rat, RatFunc};
use hybridwc_core::state::{
    eta, iota_star, iota_star_eq, lift, noneq_limit, pair_eq, pair_noneq, EqStateClass, Space, StateClass,
};
use hybridwc_core::{Epsilon, Error, ModelParams};

fn rf(p: &ModelParams, s: &str) -> RatFunc {
    parse_ratfunc(s, p.nvars()).unwrap()
}

#[test]
fn broad_sets() {
    let p = ModelParams::weighted_quartic_pair();
    assert_eq!(p.broad_set(p.mult(2)), vec![3, 4]);
    let q = ModelParams::quintic();
    assert!(q.broad_set(q.mult(1)).is_empty());
    for p in [ModelParams::quintic(), ModelParams::cubic_pair(), p] {
        assert_eq!(p.broad_set(p.mult(0)), (1..=p.m()).collect::<Vec<_>>());
    }
}

#[test]
fn noneq_pairing_examples() {
    let q = ModelParams::quintic();
    assert_eq!(pair_noneq((q.mult(1), 0), (q.mult(4), 0), &q).unwrap(), rat(1, 5));
    let c = ModelParams::cubic_pair();
    assert_eq!(pair_noneq((c.mult(1), 0), (c.mult(2), 1), &c).unwrap(), rat(1, 3));
    assert_eq!(pair_noneq((c.mult(1), 0), (c.mult(2), 0), &c).unwrap(), rat(0, 1));
    assert!(matches!(
        pair_noneq((c.mult(1), 2), (c.mult(2), 0), &c),
        Err(Error::OutsideCompactType { .. })
    ));
}

#[test]
fn eq_pairing_examples() {
    let c = ModelParams::cubic_pair();
    assert_eq!(pair_eq((1, c.mult(1)), (1, c.mult(2)), &c), rf(&c, "1/(3*(a1 - a2))"));
    let q = ModelParams::quintic();
    assert_eq!(pair_eq((1, q.mult(1)), (1, q.mult(4)), &q), rf(&q, "1/5"));
    assert!(pair_eq((1, c.mult(1)), (2, c.mult(2)), &c).is_zero());
}

/// Localization of the non-equivariant pairing: `Σ_j a_j^{l1+l2} η^j_{(m)}`
/// recovers the constant pairing in the top degree and vanishes below it.
#[test]
fn eq_pairing_localizes_noneq_pairing() {
    let models = [
        ModelParams::quintic(),
        ModelParams::cubic_pair(),
        ModelParams::weighted_quartic_pair(),
        ModelParams::quadric_quadruple(),
        ModelParams::new(vec![1, 1], 2, 3, Epsilon::ZeroPlus, 4).unwrap(),
        ModelParams::new(vec![1, 2, 3], 6, 3, Epsilon::ZeroPlus, 4).unwrap(),
    ];
    for p in &models {
        for m in p.multiplicities() {
            let ct = p.ct_dim(m);
            for l1 in 0..=ct.max(-1) {
                for l2 in 0..=ct - l1 {
                    let mut sum = RatFunc::zero(p.nvars());
                    for j in 1..=p.n() {
                        let x = RatFunc::from_poly(p.a(j).pow((l1 + l2) as u32));
                        sum = sum.add(&x.mul(&eta(j, m, p).to_ratfunc()));
                    }
                    let expect = pair_noneq((m, l1 as u32), (m.neg(), l2 as u32), p).unwrap();
                    assert_eq!(sum, RatFunc::constant(p.nvars(), expect), "{} m={m} l={l1},{l2}", p.label());
                }
            }
        }
    }
}

#[test]
fn eta_never_vanishes() {
    for p in [ModelParams::cubic_pair(), ModelParams::quadric_quadruple(), ModelParams::weighted_quartic_pair()] {
        for m in p.multiplicities() {
            for j in 1..=p.n() {
                assert!(!eta(j, m, &p).is_zero());
            }
        }
    }
}

#[test]
fn iota_examples() {
    let q = ModelParams::quintic();
    let x = StateClass::basis(&q, q.mult(1), 0).unwrap();
    let y = iota_star(&x, &q);
    assert_eq!(y.get(q.mult(1), 0), Some(&rf(&q, "1/5")));
    assert_eq!(y.entries().len(), 1);

    let c = ModelParams::cubic_pair();
    let e = EqStateClass::basis(1, c.mult(0), &c);
    let f = iota_star_eq(&e, &c);
    assert_eq!(f.get(1, c.mult(0)), Some(&rf(&c, "a1^6/2187")));

    assert!(iota_star(&StateClass::zero(&c, Space::CompactType), &c).is_zero());
}

#[test]
fn iota_is_injective_on_compact_type() {
    for p in [ModelParams::cubic_pair(), ModelParams::new(vec![1, 1], 2, 3, Epsilon::ZeroPlus, 4).unwrap()] {
        for m in p.multiplicities() {
            for l in 0..=p.ct_dim(m) {
                let x = StateClass::basis(&p, m, l as u32).unwrap();
                assert!(!iota_star(&x, &p).is_zero());
            }
        }
    }
}

#[test]
fn noneq_limit_examples() {
    let c = ModelParams::cubic_pair();
    let m = c.mult(1);
    let mut x = EqStateClass::zero();
    for j in 1..=2 {
        x.insert(j, m, RatFunc::from_poly(c.a(j)));
    }
    let h = noneq_limit(&x, &c).unwrap();
    assert_eq!(h.get(m, 1), Some(&RatFunc::one(3)));
    assert_eq!(h.entries().len(), 1);

    let one = noneq_limit(&EqStateClass::unit_lift(m, &c), &c).unwrap();
    assert_eq!(one, StateClass::basis(&c, m, 0).unwrap());

    // in a sector with ct_dim 0 the H-term is truncated away
    let w = ModelParams::new(vec![1, 1], 2, 2, Epsilon::ZeroPlus, 4).unwrap();
    let m0 = w.mult(0);
    assert_eq!(w.ct_dim(m0), -1);
    let mut y = EqStateClass::zero();
    for j in 1..=2 {
        y.insert(j, w.mult(1), RatFunc::from_poly(w.a(j)));
    }
    assert_eq!(w.ct_dim(w.mult(1)), 1);

    let q = ModelParams::quintic();
    let mut v = EqStateClass::zero();
    v.insert(1, q.mult(1), rf(&q, "z*(-(z + a1)/5)^5/(120*z^5)"));
    let lim = noneq_limit(&v, &q).unwrap();
    assert_eq!(lim.get(q.mult(1), 0), Some(&rf(&q, "-z/375000")));
}

#[test]
fn noneq_limit_detects_divergence() {
    let c = ModelParams::cubic_pair();
    let mut x = EqStateClass::zero();
    x.insert(1, c.mult(1), rf(&c, "1/a1"));
    x.insert(2, c.mult(1), rf(&c, "1/a1"));
    assert!(matches!(noneq_limit(&x, &c), Err(Error::NoNonequivariantLimit(_))));
}

#[test]
fn limit_of_lift_round_trips() {
    let models = [
        ModelParams::cubic_pair(),
        ModelParams::quadric_quadruple(),
        ModelParams::new(vec![1, 1], 2, 3, Epsilon::ZeroPlus, 4).unwrap(),
    ];
    for p in &models {
        for m in p.multiplicities() {
            for l in 0..p.n() as u32 {
                let mut x = StateClass::zero(p, Space::Ambient);
                x.insert(m, l, RatFunc::one(p.nvars())).unwrap();
                let back = noneq_limit(&lift(&x, p), p).unwrap();
                assert_eq!(back, x.truncate_ct(p), "{} m={m} l={l}", p.label());
            }
        }
    }
}

#[test]
fn class_json_round_trip() {
    let c = ModelParams::cubic_pair();
    let mut x = StateClass::zero(&c, Space::CompactType);
    x.insert(c.mult(2), 1, rf(&c, "-2/z^2")).unwrap();
    x.insert(c.mult(2), 0, rf(&c, "1/z")).unwrap();
    let v = x.to_json();
    assert_eq!(
        serde_json::to_string(&v).unwrap(),
        r#"[{"coeff":"1/z","power":0,"sector":2},{"coeff":"-2/z^2","power":1,"sector":2}]"#
    );
    assert_eq!(StateClass::from_json(&v, &c, Space::CompactType).unwrap(), x);

    let mut e = EqStateClass::zero();
    e.insert(2, c.mult(1), rf(&c, "1/(z + a1 - a2)"));
    assert_eq!(EqStateClass::from_json(&e.to_json(), &c).unwrap(), e);
}
