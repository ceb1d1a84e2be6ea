//! Residue recursion for the equivariant unstable series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::Verdict;
use crate::algebra::{Factored, MPoly, QSeries, RatFunc};
use crate::error::Result;
use crate::graphs::{
    evaluate_fully_unstable_tree_factored, in_degree_set, recursion_coeff, DecoratedTree, Edge, Insertion, Mark,
    PsiInsertion, Vertex,
};
use crate::jfun::iota_j_coeff_eq;
use crate::model::{ModelParams, Multiplicity};
use crate::state::EqStateClass;

#[derive(Clone, Debug, Serialize)]
pub struct ResidueReport {
    pub pole: (usize, usize, u32),
    pub mult: String,
    pub mult_other: String,
    /// Largest degree compared.
    pub modulus: u32,
    #[serde(serialize_with = "series_json")]
    pub lhs: QSeries<RatFunc>,
    #[serde(serialize_with = "series_json")]
    pub rhs: QSeries<RatFunc>,
    /// Degrees whose left side came from the boundary two-vertex graph.
    pub boundary_degrees: Vec<u32>,
    pub verdict: Verdict,
    pub vertex_cone_condition: &'static str,
}

fn series_json<S: serde::Serializer>(q: &QSeries<RatFunc>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let m: BTreeMap<String, String> = q.coeffs().iter().map(|(b, c)| (b.to_string(), c.to_string())).collect();
    m.serialize(s)
}

impl ResidueReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

/// Residue at `z = c` of a product, using the factored form when the pole
/// is simple.
fn residue(f: &Factored, c: &MPoly) -> Result<RatFunc> {
    match f.residue_z_simple(c)? {
        Some(r) => Ok(r.to_ratfunc()),
        None => f.to_ratfunc().residue_z(c),
    }
}

/// The two-vertex graph: the mark on a degree-zero vertex at `j`, an edge
/// of degree `β_e` to an unstable vertex of degree `β_v` at `j'`.
pub fn boundary_tree(j: usize, j2: usize, m: Multiplicity, m2: Multiplicity, beta_e: u32, beta_v: u32) -> DecoratedTree {
    let mut flags = BTreeMap::new();
    flags.insert((0, 0), m);
    flags.insert((1, 0), m2);
    DecoratedTree {
        vertices: vec![Vertex { j, beta: 0 }, Vertex { j: j2, beta: beta_v }],
        edges: vec![Edge { ends: (0, 1), beta: beta_e }],
        flags,
        marks: vec![Mark { vertex: 0, mult: m.neg() }],
    }
}

#[allow(clippy::too_many_arguments)]
fn boundary_residue(j: usize, j2: usize, m: Multiplicity, m2: Multiplicity, beta_e: u32, beta_v: u32, c: &MPoly, p: &ModelParams) -> Result<RatFunc> {
    let tree = boundary_tree(j, j2, m, m2, beta_e, beta_v);
    tree.validate(p)?;
    let minus_z = p.z().scale(&-BigRational::one());
    let ins = Insertion::new(EqStateClass::basis(j, m.neg(), p), PsiInsertion::Descendant(minus_z));
    let g = evaluate_fully_unstable_tree_factored(&tree, &[ins], p)?;
    residue(&g, c)
}

pub fn check_residue_recursion(j: usize, j2: usize, m: Multiplicity, m2: Multiplicity, beta_e: u32, p: &ModelParams, max_degree: u32) -> Result<ResidueReport> {
    check_residue_recursion_scaled(j, j2, m, m2, beta_e, p, max_degree, &BigRational::one())
}

/// As [`check_residue_recursion`] with the recursion coefficient multiplied
/// by `rc_scale` (a value other than one must produce a mismatch).
#[allow(clippy::too_many_arguments)]
pub fn check_residue_recursion_scaled(
    j: usize,
    j2: usize,
    m: Multiplicity,
    m2: Multiplicity,
    beta_e: u32,
    p: &ModelParams,
    max_degree: u32,
    rc_scale: &BigRational,
) -> Result<ResidueReport> {
    let rc = recursion_coeff(m, m2, j, j2, beta_e, p)?.scale(rc_scale);
    let n = p.nvars();
    let c = (&p.a(j) - &p.a(j2)).scale(&BigRational::new(BigInt::one(), BigInt::from(beta_e)));
    let unstable_max = p.epsilon.max_unstable();
    // past 1/ε + β_e the right side needs stable coefficients
    let modulus = match unstable_max {
        None => max_degree,
        Some(u) => max_degree.min(u + beta_e),
    };
    let mut lhs = QSeries::zero(modulus);
    let mut rhs = QSeries::zero(modulus);
    let mut boundary = Vec::new();
    for beta in 0..=modulus {
        let (sector, f) = iota_j_coeff_eq(beta, j, p);
        if p.epsilon.is_unstable(beta) {
            if sector == m {
                lhs.add_at(beta, residue(&f, &c)?);
            }
        } else if beta >= beta_e && sector == m {
            let bv = beta - beta_e;
            boundary.push(beta);
            lhs.add_at(beta, boundary_residue(j, j2, m, m2, beta_e, bv, &c, p)?);
        }
        if beta >= beta_e {
            let bv = beta - beta_e;
            let (s2, g) = iota_j_coeff_eq(bv, j2, p);
            if s2 == m2.neg() {
                let val = g.subst(0, &c)?.mul(&rc).scale(&-BigRational::one());
                rhs.add_at(beta, val.to_ratfunc());
            }
        }
    }
    let mut verdict = Verdict::ExactEqual;
    let zero = RatFunc::zero(n);
    for beta in 0..=modulus {
        let l = lhs.get(beta).unwrap_or(&zero);
        let r = rhs.get(beta).unwrap_or(&zero);
        if l != r {
            verdict = Verdict::compare(beta, m, l, r);
            break;
        }
    }
    Ok(ResidueReport {
        pole: (j, j2, beta_e),
        mult: m.to_string(),
        mult_other: m2.to_string(),
        modulus,
        lhs,
        rhs,
        boundary_degrees: boundary,
        verdict,
        vertex_cone_condition: "not-checked",
    })
}

/// Every admissible `(j, j', m, m', β_e)` with `β_e ≤ max_edge`.
pub fn residue_cases(p: &ModelParams, max_edge: u32) -> Vec<(usize, usize, Multiplicity, Multiplicity, u32)> {
    let mut out = Vec::new();
    for j in 1..=p.n() {
        for j2 in 1..=p.n() {
            if j == j2 {
                continue;
            }
            for m in p.multiplicities() {
                for m2 in p.multiplicities() {
                    for be in 1..=max_edge {
                        if in_degree_set(be, m, m2) {
                            out.push((j, j2, m, m2, be));
                        }
                    }
                }
            }
        }
    }
    out
}
