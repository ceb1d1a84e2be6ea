//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::*;
use hybridwc_core::algebra::parse::parse_ratfunc;
use hybridwc_core::graphs::{aut_order, aut_order_brute_force, enumerate_trees};
use hybridwc_core::jfun::{j_coefficient, j_plus, mu_coeff, unstable_coeff_noneq, z_unit, JValue};
use hybridwc_core::state::noneq_limit;
use hybridwc_core::verify::{check_residue_recursion, residue_cases, Registry};
use hybridwc_core::{Epsilon, ModelParams};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sample_models() -> [ModelParams; 3] {
    [ModelParams::quintic(), ModelParams::cubic_pair(), ModelParams::weighted_quartic_pair()]
}

fn residues_zero_plus() -> Check {
    let start = Instant::now();
    let mut n = 0;
    for p in [ModelParams::cubic_pair(), ModelParams::quadric_quadruple()] {
        for (j, j2, m, m2, be) in residue_cases(&p, 3) {
            let r = check_residue_recursion(j, j2, m, m2, be, &p, 8).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{} pole {:?} m={m} m'={m2}: {:?}", p.label(), r.pole, r.verdict))?;
            n += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("took {t:?}"))?;
    Ok(format!("{n} cases up to q^8 in {:.1}s", t.as_secs_f64()))
}

fn residues_finite_epsilon() -> Check {
    let mut n = 0;
    let mut boundary = 0;
    for eps in ["1/2", "1/3"] {
        let p = ModelParams::cubic_pair().with_epsilon(eps.parse().unwrap());
        for (j, j2, m, m2, be) in residue_cases(&p, 2) {
            let r = check_residue_recursion(j, j2, m, m2, be, &p, 8).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("eps={eps} pole {:?}: {:?}", r.pole, r.verdict))?;
            n += 1;
            boundary += r.boundary_degrees.len();
        }
    }
    ensure(boundary > 0, || "no boundary degree was exercised".into())?;
    Ok(format!("{n} cases, {boundary} boundary coefficients"))
}

fn edge_oracles() -> Check {
    let reg = Registry::default();
    let edges = reg.get("edges").unwrap();
    let mut n = 0;
    for p in [ModelParams::cubic_pair(), ModelParams::quadric_quadruple(), ModelParams::weighted_quartic_pair()] {
        let o = edges.run(&p, 0).map_err(|e| e.to_string())?;
        ensure(o.passed(), || format!("{}: {}", p.label(), o.failures[0]))?;
        n += o.checks;
    }
    // the two b-ranges must really differ somewhere
    let c = ModelParams::cubic_pair();
    let m = c.mult(0);
    let strict = hybridwc_core::graphs::edge_factor(&c, 1, 2, 3, m, false).map_err(|e| e.to_string())?;
    let loose = hybridwc_core::graphs::edge_factor(&c, 1, 2, 3, m, true).map_err(|e| e.to_string())?;
    ensure(strict.to_ratfunc() != loose.to_ratfunc(), || "strict and non-strict ranges agree".into())?;
    Ok(format!("{n} edge configurations"))
}

fn noneq_limit_check() -> Check {
    for p in sample_models() {
        let r = hybridwc_core::verify::check_noneq_consistency(&p, 10).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: {:?}", p.label(), r.verdict))?;
    }
    let q = ModelParams::quintic();
    let want = parse_ratfunc("-z/375000", q.nvars()).unwrap();
    let direct = unstable_coeff_noneq(5, &q);
    ensure(direct.get(q.mult(1), 0) == Some(&want) && direct.entries().len() == 1, || format!("direct route: {direct:?}"))?;
    let Some(JValue::Equivariant(eq)) = j_coefficient(5, &q, true).value else {
        return Err("no equivariant coefficient at β = 5".into());
    };
    let lim = noneq_limit(&eq, &q).map_err(|e| e.to_string())?.truncate_ct(&q);
    ensure(lim.get(q.mult(1), 0) == Some(&want) && lim.entries().len() == 1, || format!("limit route: {lim:?}"))?;
    Ok("β ≤ 10 on three models; quintic β = 5 gives -z/375000".into())
}

fn pole_audit() -> Check {
    let poles = Registry::default();
    let poles = poles.get("poles").unwrap();
    let mut n = 0;
    for p in [ModelParams::quintic(), ModelParams::cubic_pair(), ModelParams::quadric_quadruple(), ModelParams::weighted_quartic_pair()] {
        let o = poles.run(&p, 10).map_err(|e| e.to_string())?;
        ensure(o.passed(), || format!("{}: {}", p.label(), o.failures[0]))?;
        n += o.checks;
    }
    Ok(format!("{n} (fixed point, sector) series up to q^10"))
}

fn mirror_map() -> Check {
    for p in sample_models() {
        let inf = p.with_epsilon(Epsilon::Infinity);
        let s = j_plus(&inf);
        ensure(s.coeffs().len() == 1 && s.get(0) == Some(&z_unit(&inf)), || format!("{}: j_plus at inf is not z·1", p.label()))?;
        for beta in 0..=10 {
            ensure(mu_coeff(beta, &inf).is_zero(), || format!("{}: mu_{beta} at inf", p.label()))?;
        }
        for (eps, cut) in [("1/2", 2), ("1/3", 3), ("1", 1)] {
            let pe = p.with_epsilon(eps.parse().unwrap());
            for beta in cut + 1..=10 {
                ensure(mu_coeff(beta, &pe).is_zero(), || format!("{}: mu_{beta} at eps={eps}", p.label()))?;
            }
        }
    }
    Ok("three models".into())
}

fn combinatorics() -> Check {
    let cases = [
        (ModelParams::cubic_pair(), 1, 4),
        (ModelParams::cubic_pair(), 2, 4),
        (ModelParams::quadric_quadruple(), 1, 4),
        (ModelParams::weighted_quartic_pair(), 1, 5),
        (ModelParams::cubic_pair().with_epsilon("1/2".parse().unwrap()), 2, 4),
    ];
    let mut n = 0;
    for (p, marks, beta) in cases {
        for t in enumerate_trees(marks, beta, &p, 5) {
            t.validate(&p).map_err(|e| format!("{}: {e}", p.label()))?;
            ensure(t.degree() == beta, || format!("degree {} != {beta}", t.degree()))?;
            let (fast, slow) = (aut_order(&t), aut_order_brute_force(&t));
            ensure(fast == slow, || format!("|Aut| {fast} vs brute force {slow}"))?;
            n += 1;
        }
    }
    ensure(n > 0, || "no trees".into())?;
    Ok(format!("{n} trees"))
}

fn algebra_laws() -> Check {
    const CASES: u32 = 10_000;
    type Law = fn(Sample, Sample, Sample) -> Result<(), proptest::test_runner::TestCaseError>;
    let laws: [(&str, Law); 4] = [
        ("ring", |f, g, h| ring_axioms(&f.ratfunc(), &g.ratfunc(), &h.ratfunc())),
        ("normalize", |f, _, _| normalize_idempotent(&f.ratfunc())),
        ("residue", |f, _, _| residue_matches_laurent(&f)),
        ("partial fractions", |f, _, _| partial_fractions(&f)),
    ];
    let results: Vec<Result<(), String>> = std::thread::scope(|s| {
        let handles: Vec<_> = laws
            .iter()
            .map(|&(name, law)| {
                s.spawn(move || {
                    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
                    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
                    runner
                        .run(&(sample(), sample(), sample()), |(f, g, h)| law(f, g, h))
                        .map_err(|e| format!("{name}: {e}"))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("panicked".into()))).collect()
    });
    results.into_iter().collect::<Result<Vec<()>, String>>()?;
    Ok(format!("{CASES} instances per law"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("residue recursion at eps=0+", residues_zero_plus),
        ("residue recursion at finite eps", residues_finite_epsilon),
        ("edge formulas against the football oracle", edge_oracles),
        ("non-equivariant limit", noneq_limit_check),
        ("pole structure", pole_audit),
        ("mirror map degeneration", mirror_map),
        ("tree combinatorics", combinatorics),
        ("algebra kernel laws", algebra_laws),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {}: {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
