//! Multivariate gcd over ℚ: a heuristic evaluation/interpolation gcd
//! verified by trial division, with subresultant sequences as fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mpoly::{MPoly, Mono};

/// Greatest common divisor, normalized by [`MPoly::primitive`]. `gcd(0, 0) = 0`.
pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    let (big, small) = if f.len() >= g.len() { (f, g) } else { (g, f) };
    if !small.is_constant() && big.div_exact(small).is_some() {
        return small.primitive();
    }
    let (fp, gp) = (f.primitive(), g.primitive());
    match heu_gcd(&fp, &gp) {
        Some(h) => h.primitive(),
        None => gcd_rec(f, g),
    }
}

fn max_norm(p: &MPoly) -> BigInt {
    p.terms().values().map(|c| c.numer().abs()).max().unwrap_or_else(BigInt::zero)
}

fn int_content(p: &MPoly) -> BigInt {
    p.terms().values().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
}

fn scale_int(p: &MPoly, c: &BigInt, divide: bool) -> MPoly {
    let c = BigRational::from_integer(c.clone());
    p.scale(&if divide { c.recip() } else { c })
}

/// `p` with `x_v := xi`.
fn eval_at(p: &MPoly, v: usize, xi: &BigInt) -> MPoly {
    let n = p.nvars();
    let mut pw: Vec<BigInt> = vec![BigInt::one()];
    let mut out = MPoly::zero(n);
    for (m, c) in p.terms() {
        let e = m.0[v] as usize;
        while pw.len() <= e {
            let next = pw.last().unwrap() * xi;
            pw.push(next);
        }
        let mut mm = m.clone();
        mm.0[v] = 0;
        out.add_term(mm, c * BigRational::from_integer(pw[e].clone()));
    }
    out
}

/// Recover a polynomial in `x_v` from its value at `x_v = xi` by balanced
/// `xi`-adic digits.
fn interpolate(h: &MPoly, v: usize, xi: &BigInt) -> MPoly {
    let n = h.nvars();
    let half = xi / 2;
    let mut rest = h.clone();
    let mut out = MPoly::zero(n);
    let mut i = 0;
    while !rest.is_zero() {
        let mut digit = MPoly::zero(n);
        for (m, c) in rest.terms() {
            let mut r = c.numer().mod_floor(xi);
            if r > half {
                r -= xi;
            }
            if !r.is_zero() {
                digit.add_term(m.clone(), BigRational::from_integer(r));
            }
        }
        for (m, c) in digit.terms() {
            out.add_term(m.mul(&Mono::var(n, v, i)), c.clone());
        }
        rest = scale_int(&(&rest - &digit), xi, true);
        i += 1;
    }
    out
}

/// Heuristic gcd of integer polynomials; `None` when no evaluation point
/// produced a candidate that divides both inputs.
fn heu_gcd(f: &MPoly, g: &MPoly) -> Option<MPoly> {
    let n = f.nvars();
    let gc = int_content(f).gcd(&int_content(g));
    if f.is_constant() || g.is_constant() {
        return Some(MPoly::constant(n, BigRational::from_integer(gc)));
    }
    let v = (0..n).rev().find(|&v| f.involves(v) || g.involves(v))?;
    let f = scale_int(f, &gc, true);
    let g = scale_int(g, &gc, true);
    let (nf, ng) = (max_norm(&f), max_norm(&g));
    let b: BigInt = nf.clone().min(ng.clone()) * 2 + 29;
    let lf = f.leading_coeff().numer().abs();
    let lg = g.leading_coeff().numer().abs();
    // ξ ≥ 2·min(|f|, |g|) + 2 makes a dividing candidate the gcd
    let mut xi = b.max((nf / lf).min(ng / lg) * 2 + 2);
    for _ in 0..6 {
        let ff = eval_at(&f, v, &xi);
        let gg = eval_at(&g, v, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(h) = heu_gcd(&ff, &gg) {
                let cand = interpolate(&h, v, &xi);
                let c = int_content(&cand);
                if !c.is_zero() {
                    let cand = scale_int(&cand, &c, true);
                    if f.div_exact(&cand).is_some() && g.div_exact(&cand).is_some() {
                        return Some(scale_int(&cand, &gc, false));
                    }
                }
            }
        }
        xi = xi.clone() * 73794 * xi.sqrt().sqrt() / 27011;
    }
    None
}

fn involved(p: &MPoly) -> Vec<usize> {
    (0..p.nvars()).filter(|&v| p.involves(v)).collect()
}

fn mono_gcd(m: &MPoly, other: &MPoly) -> MPoly {
    let n = m.nvars();
    let (mono, _) = m.leading().unwrap();
    let mut e = mono.0.clone();
    for t in other.terms().keys() {
        for (x, y) in e.iter_mut().zip(&t.0) {
            *x = (*x).min(*y);
        }
    }
    MPoly::monomial(n, Mono(e), num_rational::BigRational::from_integer(1.into()))
}

fn gcd_rec(f: &MPoly, g: &MPoly) -> MPoly {
    let n = f.nvars();
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    if f.is_constant() || g.is_constant() {
        return MPoly::one(n);
    }
    if f.len() == 1 {
        return mono_gcd(f, g);
    }
    if g.len() == 1 {
        return mono_gcd(g, f);
    }
    let vf = involved(f);
    let vg = involved(g);
    if let Some(&v) = vf.iter().find(|v| !vg.contains(v)) {
        return gcd_rec(&content_in(f, v), g);
    }
    if let Some(&v) = vg.iter().find(|v| !vf.contains(v)) {
        return gcd_rec(f, &content_in(g, v));
    }
    let v = *vf
        .iter()
        .min_by_key(|&&v| f.degree_in(v).unwrap().max(g.degree_in(v).unwrap()))
        .unwrap();

    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd_rec(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides").primitive();
    let mut b = g.div_exact(&cg).expect("content divides").primitive();
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    // subresultant sequence
    let mut lead = MPoly::one(n);
    let mut h = MPoly::one(n);
    loop {
        let delta = a.degree_in(v).unwrap() - b.degree_in(v).unwrap();
        let r = prem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if !r.involves(v) {
            b = MPoly::one(n);
            break;
        }
        let divisor = &lead * &h.pow(delta);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division");
        lead = leading_in(&a, v);
        h = if delta == 0 {
            h
        } else {
            lead.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division")
        };
    }
    (&primitive_part_in(&b, v) * &c).primitive()
}

fn leading_in(p: &MPoly, v: usize) -> MPoly {
    let d = p.degree_in(v).unwrap();
    p.to_univariate(v)[d as usize].clone()
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &MPoly, v: usize) -> MPoly {
    let coeffs = p.to_univariate(v);
    let mut acc = MPoly::zero(p.nvars());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = if acc.is_zero() { c.primitive() } else { gcd_rec(&acc, c) };
        if acc.is_constant() {
            return MPoly::one(p.nvars());
        }
    }
    acc
}

fn primitive_part_in(p: &MPoly, v: usize) -> MPoly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b` in variable `v`.
fn prem(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let n = a.nvars();
    let db = b.degree_in(v).unwrap();
    let lb = leading_in(b, v);
    let mut r = a.clone();
    let mut steps = a.degree_in(v).unwrap() + 1 - db;
    while let Some(dr) = r.degree_in(v) {
        if r.is_zero() || dr < db {
            break;
        }
        let lr = leading_in(&r, v);
        let shift = MPoly::monomial(n, Mono::var(n, v, dr - db), num_traits::One::one());
        r = &(&r * &lb) - &(&(&lr * &shift) * b);
        steps -= 1;
    }
    if steps > 0 {
        r = &r * &lb.pow(steps);
    }
    r
}
