//! Edge, flag and unstable-vertex contributions.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use super::{DecoratedTree, VertexKind};
use crate::algebra::{Factored, MPoly, RatFunc};
use crate::error::{Error, Result};
use crate::jfun::unstable_coeff_eq_factored;
use crate::model::{big, frac, progression, ModelParams, Multiplicity};
use crate::state::{eta, EqStateClass};

/// ψ-class data at a mark.
#[derive(Clone, Debug, PartialEq)]
pub enum PsiInsertion {
    /// `ψ^k`.
    Power(u32),
    /// `1/(x - ψ)`.
    Descendant(MPoly),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Insertion {
    pub class: EqStateClass,
    pub psi: PsiInsertion,
}

impl Insertion {
    pub fn new(class: EqStateClass, psi: PsiInsertion) -> Self {
        Insertion { class, psi }
    }

    /// `1_{(m)}` with no ψ-class.
    pub fn unit(m: Multiplicity, p: &ModelParams) -> Self {
        Insertion { class: EqStateClass::unit_lift(m, p), psi: PsiInsertion::Power(0) }
    }
}

fn r(x: Rational64) -> BigRational {
    big(x)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(a_j - a_k) / β`.
fn tangent(p: &ModelParams, j: usize, k: usize, beta: u32) -> MPoly {
    (&p.a(j) - &p.a(k)).scale(&BigRational::new(BigInt::one(), BigInt::from(beta)))
}

/// `β ∈ E^{m,m'}`, i.e. `β/d - m - m' ∈ ℤ`.
pub fn in_degree_set(beta: u32, m: Multiplicity, m2: Multiplicity) -> bool {
    (beta as i64 - m.a() as i64 - m2.a() as i64).rem_euclid(m.d() as i64) == 0
}

/// Edge factor seen from the endpoint at `jv` with flag `m`.
///
/// With `twisted` the `b`-ranges include both ends and the prefactor
/// `1/(dβ_e)` is applied; otherwise both ends are excluded and no
/// prefactor is used.
pub fn edge_factor(p: &ModelParams, jv: usize, jw: usize, beta_e: u32, m: Multiplicity, twisted: bool) -> Result<Factored> {
    if jv == jw {
        return Err(Error::InvalidEdge(format!("both ends at fixed point {jv}")));
    }
    if beta_e == 0 {
        return Err(Error::InvalidEdge("edge degree must be positive".into()));
    }
    let n = p.nvars();
    let av = p.a(jv);
    let tau = tangent(p, jv, jw, beta_e);
    let mut f = if twisted {
        Factored::constant(n, BigRational::new(BigInt::one(), BigInt::from(p.d as u64 * beta_e as u64)))
    } else {
        Factored::one(n)
    };
    let be = Rational64::from_integer(beta_e as i64);
    for i in 0..p.m() {
        let w = Rational64::from_integer(p.weights[i] as i64);
        let hi = be * p.q(i);
        for b in progression(Rational64::zero(), hi, frac(w * m.value()), !twisted, !twisted) {
            let fac = &tau.scale(&r(b)) - &av.scale(&r(p.q(i)));
            f.mul_poly(&fac, 1)?;
        }
    }
    for k in 1..=p.n() {
        let base = &av - &p.a(k);
        for b in 0..=beta_e {
            let fac = &base - &tau.scale(&int(b as i64));
            if !fac.is_zero() {
                f.mul_poly(&fac, -1)?;
            }
        }
    }
    Ok(f)
}

fn edge_ends(tree: &DecoratedTree, e: usize) -> Result<(usize, usize)> {
    tree.edges.get(e).map(|x| x.ends).ok_or_else(|| Error::InternalInvariantViolation(format!("no edge {e}")))
}

/// Edge contribution, read from the first endpoint.
pub fn contr_edge(e: usize, tree: &DecoratedTree, p: &ModelParams) -> Result<Factored> {
    let (v, w) = edge_ends(tree, e)?;
    let m = tree.flags.get(&(v, e)).copied().ok_or_else(|| Error::InternalInvariantViolation(format!("no flag ({v},{e})")))?;
    edge_factor(p, tree.vertices[v].j, tree.vertices[w].j, tree.edges[e].beta, m, true)
}

/// `(η^{j_v}_{(m_{(v,e)})})^{-1}`.
pub fn contr_flag(v: usize, e: usize, tree: &DecoratedTree, p: &ModelParams) -> Factored {
    eta(tree.vertices[v].j, tree.flag(v, e), p).inv().expect("η is nonzero")
}

/// Valence-one unstable vertex at `jv` with tangent weight `tau` and flag `m`:
/// `η τ Π_i Π_{0<b<w_i(β_v+1)/d, ⟨b⟩=⟨-w_i m⟩} (-bτ - w_i a_{jv}/d) / Π_k Π'_{0<b≤β_v} (bτ + a_{jv} - a_k)`.
pub fn unstable_val1_factor(p: &ModelParams, jv: usize, tau: &MPoly, beta_v: u32, m: Multiplicity) -> Result<Factored> {
    let av = p.a(jv);
    let mut f = eta(jv, m, p);
    f.mul_poly(tau, 1)?;
    let top = Rational64::from_integer(beta_v as i64 + 1);
    for i in 0..p.m() {
        let w = Rational64::from_integer(p.weights[i] as i64);
        for b in progression(Rational64::zero(), top * p.q(i), frac(-w * m.value()), true, true) {
            let fac = &tau.scale(&-r(b)) - &av.scale(&r(p.q(i)));
            f.mul_poly(&fac, 1)?;
        }
    }
    for k in 1..=p.n() {
        let base = &av - &p.a(k);
        for b in 1..=beta_v {
            let fac = &tau.scale(&int(b as i64)) + &base;
            if !fac.is_zero() {
                f.mul_poly(&fac, -1)?;
            }
        }
    }
    Ok(f)
}

/// Closed form for an unstable edge of degree `β_e` glued to an unstable
/// valence-one vertex of degree `β_v` at `jb`:
/// `Π_i Π_{-(β_v+1)w_i/d<b<β_e w_i/d, ⟨b⟩=⟨w_i m⟩} ((b/β_e)(a_A - a_B) - w_i a_A/d)
///  / Π_k Π'_{-β_v≤b≤β_e} ((b/β_e)(a_B - a_A) + a_A - a_k)`.
pub fn unstable_edge_display(p: &ModelParams, ja: usize, jb: usize, beta_e: u32, beta_v: u32, m: Multiplicity) -> Result<Factored> {
    if ja == jb {
        return Err(Error::InvalidEdge(format!("both ends at fixed point {ja}")));
    }
    let aa = p.a(ja);
    let tau = tangent(p, ja, jb, beta_e);
    let mut f = Factored::one(p.nvars());
    let be = Rational64::from_integer(beta_e as i64);
    let bv = Rational64::from_integer(beta_v as i64 + 1);
    for i in 0..p.m() {
        let w = Rational64::from_integer(p.weights[i] as i64);
        for b in progression(-bv * p.q(i), be * p.q(i), frac(w * m.value()), true, true) {
            f.mul_poly(&(&tau.scale(&r(b)) - &aa.scale(&r(p.q(i)))), 1)?;
        }
    }
    for k in 1..=p.n() {
        let base = &aa - &p.a(k);
        for b in -(beta_v as i64)..=beta_e as i64 {
            let fac = &base - &tau.scale(&int(b));
            if !fac.is_zero() {
                f.mul_poly(&fac, -1)?;
            }
        }
    }
    Ok(f)
}

/// `RC^{m,m'}_{j,j'}(β)`.
pub fn recursion_coeff(m: Multiplicity, m2: Multiplicity, j: usize, j2: usize, beta: u32, p: &ModelParams) -> Result<Factored> {
    if j == j2 {
        return Err(Error::InvalidEdge(format!("j = j' = {j}")));
    }
    if beta == 0 || !in_degree_set(beta, m, m2) {
        return Err(Error::InvalidDegree(format!("{beta} is not in E^{{{m},{m2}}}")));
    }
    let aj = p.a(j);
    let tau = tangent(p, j, j2, beta);
    let mut f = Factored::constant(p.nvars(), BigRational::new(BigInt::one(), BigInt::from(beta)));
    let be = Rational64::from_integer(beta as i64);
    for i in 0..p.m() {
        let w = Rational64::from_integer(p.weights[i] as i64);
        for b in progression(Rational64::zero(), be * p.q(i), frac(w * m.value()), false, true) {
            f.mul_poly(&(&tau.scale(&r(b)) - &aj.scale(&r(p.q(i)))), 1)?;
        }
    }
    for k in 1..=p.n() {
        let base = &aj - &p.a(k);
        for b in 0..beta {
            let fac = &base - &tau.scale(&int(b as i64));
            if !fac.is_zero() {
                f.mul_poly(&fac, -1)?;
            }
        }
    }
    Ok(f)
}

fn factored_of(r: &RatFunc) -> Result<Factored> {
    if r.is_zero() {
        return Ok(Factored::zero(r.nvars()));
    }
    let mut f = Factored::from_poly(r.num());
    match r.den_factors() {
        Some(fs) => {
            f.mul_poly(&MPoly::constant(r.nvars(), r.den().leading_coeff()), -1)?;
            for (g, e) in fs {
                f.mul_poly(g, -(*e as i32))?;
            }
        }
        None => f.mul_poly(r.den(), -1)?,
    }
    Ok(f)
}

fn psi_factor(psi: &PsiInsertion, value: &MPoly) -> Result<Factored> {
    let mut f = Factored::one(value.nvars());
    match psi {
        PsiInsertion::Power(k) => f.mul_poly(value, *k as i32)?,
        PsiInsertion::Descendant(x) => f.mul_poly(&(x - value), -1)?,
    }
    Ok(f)
}

fn insertion_for(k: usize, tree: &DecoratedTree, insertions: &[Insertion], p: &ModelParams) -> Insertion {
    insertions.get(k).cloned().unwrap_or_else(|| Insertion::unit(tree.marks[k].mult, p))
}

/// Contribution of an unstable vertex.  Mark insertions are restricted to
/// the vertex's fixed point in the mark's sector; missing insertions default
/// to the unit of that sector.
pub fn contr_unstable_vertex(v: usize, tree: &DecoratedTree, insertions: &[Insertion], p: &ModelParams) -> Result<Factored> {
    let vx = tree.vertices[v];
    let edges = tree.edges_at(v);
    let marks = tree.marks_at(v);
    let n = p.nvars();
    match tree.kind(v, p)? {
        VertexKind::Stable => Err(Error::ContainsStableVertex),
        VertexKind::UnstableVal1 if edges.is_empty() => {
            // lone vertex carrying the only mark; the tangent weight becomes z
            let k = marks[0];
            let ins = insertion_for(k, tree, insertions, p);
            let mk = tree.marks[k].mult;
            let (sector, j) = unstable_coeff_eq_factored(vx.beta, vx.j, p);
            if sector != mk.neg() {
                return Ok(Factored::zero(n));
            }
            let mut f = factored_of(&ins.class.restrict(vx.j, mk, n))?.mul(&eta(vx.j, mk, p)).mul(&j);
            f = f.mul(&psi_factor(&ins.psi, &p.z().scale(&-BigRational::one()))?);
            Ok(f)
        }
        VertexKind::UnstableVal1 => {
            let e = edges[0];
            let w = tree.edges[e].other(v);
            let tau = tangent(p, vx.j, tree.vertices[w].j, tree.edges[e].beta);
            unstable_val1_factor(p, vx.j, &tau, vx.beta, tree.flag(v, e))
        }
        VertexKind::UnstableVal2Node => {
            let (e1, e2) = (edges[0], edges[1]);
            let t1 = tangent(p, vx.j, tree.vertices[tree.edges[e1].other(v)].j, tree.edges[e1].beta);
            let t2 = tangent(p, vx.j, tree.vertices[tree.edges[e2].other(v)].j, tree.edges[e2].beta);
            let mut f = eta(vx.j, tree.flag(v, e1), p);
            f.mul_poly(&(&t1 + &t2), -1)?;
            Ok(f)
        }
        VertexKind::UnstableVal2Mark => {
            let (e, k) = (edges[0], marks[0]);
            let w = tree.edges[e].other(v);
            let ins = insertion_for(k, tree, insertions, p);
            let psi = tangent(p, tree.vertices[w].j, vx.j, tree.edges[e].beta);
            let phi = factored_of(&ins.class.restrict(vx.j, tree.marks[k].mult, n))?;
            Ok(phi.mul(&psi_factor(&ins.psi, &psi)?).mul(&eta(vx.j, tree.flag(v, e), p)))
        }
    }
}

/// Product of all vertex, flag and edge contributions over `|Aut|`.
pub fn evaluate_fully_unstable_tree_factored(tree: &DecoratedTree, insertions: &[Insertion], p: &ModelParams) -> Result<Factored> {
    let kinds = tree.kinds(p)?;
    if kinds.contains(&VertexKind::Stable) {
        return Err(Error::ContainsStableVertex);
    }
    let mut f = Factored::constant(p.nvars(), BigRational::new(BigInt::one(), BigInt::from(super::aut_order(tree))));
    for v in 0..tree.vertices.len() {
        f = f.mul(&contr_unstable_vertex(v, tree, insertions, p)?);
        if f.is_zero() {
            return Ok(f);
        }
    }
    for &(v, e) in tree.flags.keys() {
        f = f.mul(&contr_flag(v, e, tree, p));
    }
    for e in 0..tree.edges.len() {
        f = f.mul(&contr_edge(e, tree, p)?);
    }
    Ok(f)
}

pub fn evaluate_fully_unstable_tree(tree: &DecoratedTree, insertions: &[Insertion], p: &ModelParams) -> Result<RatFunc> {
    evaluate_fully_unstable_tree_factored(tree, insertions, p).map(|f| f.to_ratfunc())
}
