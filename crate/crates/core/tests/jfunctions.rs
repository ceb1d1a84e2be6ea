use hybridwc_core::algebra::parse::parse_ratfunc;
use hybridwc_core::algebra::RatFunc;
use hybridwc_core::jfun::{
    expected_degree, iota_j_coeff, j_coefficient, j_plus, mu_coeff, nu_coeff, unstable_coeff_eq,
    unstable_coeff_noneq, z_terms, z_unit, JValue,
};
use hybridwc_core::state::{iota_star, noneq_limit, StateClass};
use hybridwc_core::{Epsilon, ModelParams};

fn rf(p: &ModelParams, s: &str) -> RatFunc {
    parse_ratfunc(s, p.nvars()).unwrap()
}

fn models() -> Vec<ModelParams> {
    vec![ModelParams::quintic(), ModelParams::cubic_pair(), ModelParams::weighted_quartic_pair()]
}

#[test]
fn noneq_examples() {
    let q = ModelParams::quintic();
    assert_eq!(unstable_coeff_noneq(0, &q), z_unit(&q));
    let c5 = unstable_coeff_noneq(5, &q);
    assert_eq!(c5.get(q.mult(1), 0), Some(&rf(&q, "-z/375000")));
    assert_eq!(c5.entries().len(), 1);

    let c = ModelParams::cubic_pair();
    let c1 = unstable_coeff_noneq(1, &c);
    assert_eq!(c1.get(c.mult(2), 0), Some(&rf(&c, "1/z")));
    assert_eq!(c1.get(c.mult(2), 1), Some(&rf(&c, "-2/z^2")));
    assert_eq!(c1.entries().len(), 2);
}

/// Independent evaluation of the quintic β=5 product with plain fractions.
#[test]
fn quintic_degree_five_by_hand() {
    // z (-(1/5) z)^5 / (1·2·3·4·5 z^5)
    let coeff = num_rational::Rational64::new(-1, 5i64.pow(5) * 120);
    assert_eq!(coeff, num_rational::Rational64::new(-1, 375000));
}

#[test]
fn eq_examples() {
    let q = ModelParams::quintic();
    assert_eq!(unstable_coeff_eq(0, 1, &q).get(1, q.mult(1)), Some(&rf(&q, "z")));
    assert_eq!(
        unstable_coeff_eq(5, 1, &q).get(1, q.mult(1)),
        Some(&rf(&q, "z*(-(z + a1)/5)^5/(120*z^5)"))
    );
    let c = ModelParams::cubic_pair();
    assert_eq!(unstable_coeff_eq(1, 1, &c).get(1, c.mult(2)), Some(&rf(&c, "1/(z + a1 - a2)")));
}

#[test]
fn sector_selection_rule() {
    for p in models() {
        for beta in 0..=10 {
            let m = p.j_sector(beta);
            assert!(unstable_coeff_noneq(beta, &p).entries().keys().all(|(s, _)| *s == m));
            for j in 1..=p.n() {
                assert!(unstable_coeff_eq(beta, j, &p).entries().keys().all(|(_, s)| *s == m));
            }
        }
    }
}

#[test]
fn homogeneity() {
    let mut models = models();
    models.push(ModelParams::quadric_quadruple());
    for p in models {
        for beta in 0..=8 {
            let want = expected_degree(beta, &p);
            for j in 1..=p.n() {
                let c = unstable_coeff_eq(beta, j, &p);
                let r = c.get(j, p.j_sector(beta)).unwrap();
                for t in r.num().terms().keys() {
                    for s in r.den().terms().keys() {
                        assert_eq!(t.degree() as i64 - s.degree() as i64, want, "{} β={beta}", p.label());
                    }
                }
            }
            for ((_, l), r) in unstable_coeff_noneq(beta, &p).entries() {
                for (e, _) in z_terms(r).unwrap() {
                    assert_eq!(e + *l as i64, want, "{} β={beta}", p.label());
                }
            }
        }
    }
}

#[test]
fn equivariant_limit_matches() {
    for p in models() {
        for beta in 0..=10 {
            let eq = match j_coefficient(beta, &p, true).value.unwrap() {
                JValue::Equivariant(e) => e,
                _ => unreachable!(),
            };
            assert_eq!(noneq_limit(&eq, &p).unwrap(), unstable_coeff_noneq(beta, &p), "{} β={beta}", p.label());
        }
    }
}

#[test]
fn j_plus_examples() {
    for p in models() {
        let p = p.with_epsilon(Epsilon::Infinity);
        let s = j_plus(&p);
        assert_eq!(s.coeffs().len(), 1);
        assert_eq!(s.get(0), Some(&z_unit(&p)));
    }
    let q = ModelParams::quintic().with_max_q_degree(5);
    let s = j_plus(&q);
    assert_eq!(s.get(0), Some(&z_unit(&q)));
    assert_eq!(s.get(1).unwrap().get(q.mult(2), 0), Some(&rf(&q, "1")));
    assert_eq!(s.get(5).unwrap().get(q.mult(1), 0), Some(&rf(&q, "-z/375000")));
    assert_eq!(s.coeffs().keys().copied().collect::<Vec<_>>(), vec![0, 1, 5]);

    let c = ModelParams::cubic_pair();
    assert!(j_plus(&c).get(1).is_none());
}

#[test]
fn mu_examples() {
    for p in models() {
        assert!(mu_coeff(0, &p).is_zero());
        for (eps, cut) in [("1/2", 2), ("1/3", 3), ("1", 1)] {
            let p = p.with_epsilon(eps.parse().unwrap());
            for beta in cut + 1..=10 {
                assert!(mu_coeff(beta, &p).is_zero());
            }
        }
    }
    let q = ModelParams::quintic();
    assert_eq!(mu_coeff(5, &q).get(q.mult(1), 0), Some(&rf(&q, "-z/375000")));
}

#[test]
fn nu_examples() {
    let c = ModelParams::cubic_pair();
    for j in 1..=2 {
        assert!(nu_coeff(0, j, &c).is_zero());
    }
    // 1/(z + a1 - a2) is regular at z = 0
    assert_eq!(nu_coeff(1, 1, &c).get(1, c.mult(2)), Some(&rf(&c, "1/(z + a1 - a2)")));
    let q = ModelParams::quintic();
    // z(-(z+a1)/5)^5/(120 z^5): principal part removed
    let nu = nu_coeff(5, 1, &q);
    let v = nu.get(1, q.mult(1)).unwrap();
    assert_eq!(v, &rf(&q, "-(z + 5*a1)/375000"));
    assert!(nu_coeff(4, 1, &q.with_epsilon("1/3".parse().unwrap())).is_zero());
}

#[test]
fn iota_j_examples() {
    let q = ModelParams::quintic();
    assert_eq!(iota_j_coeff(0, &q).get(q.mult(1), 0), Some(&rf(&q, "-z/5")));
    assert_eq!(iota_j_coeff(5, &q).get(q.mult(1), 0), Some(&rf(&q, "z/1875000")));
}

#[test]
fn iota_j_is_twisted_pushforward() {
    let mut models = models();
    models.push(ModelParams::new(vec![1, 1], 2, 3, Epsilon::ZeroPlus, 4).unwrap());
    for p in models {
        let flip = |r: &RatFunc| r.subst(0, &(-&p.z())).unwrap();
        for beta in 0..=10 {
            let lhs = iota_j_coeff(beta, &p);
            let rhs: StateClass = iota_star(&unstable_coeff_noneq(beta, &p), &p).map_coeffs(flip);
            assert_eq!(lhs, rhs, "{} β={beta}", p.label());
        }
    }
}
