//! Coefficient tables: JSON (canonical, re-readable), CSV and LaTeX.

use std::collections::BTreeMap;

use hybridwc_core::algebra::parse::parse_ratfunc;
use hybridwc_core::algebra::{MPoly, Mono, RatFunc};
use hybridwc_core::jfun::{j_coefficient, mu_coeff, z_terms, JValue, StabilityTag};
use hybridwc_core::state::{EqStateClass, Space, StateClass};
use hybridwc_core::{Error, ModelParams, Multiplicity};
use num_rational::BigRational;
use serde_json::{json, Value};

/// One row of a coefficient table.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    /// `("power", l)` or `("fixed_point", j)`.
    pub basis: (&'static str, u32),
    pub z_exponent: Option<i64>,
    pub coeff: String,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub beta: u32,
    pub sector: Multiplicity,
    pub stable: bool,
    pub entries: Vec<Entry>,
}

fn noneq_entries(c: &StateClass) -> Vec<Entry> {
    let mut out = Vec::new();
    for (&(_, l), r) in c.entries() {
        match z_terms(r) {
            Some(terms) => {
                for (e, x) in terms.into_iter().rev() {
                    out.push(Entry { basis: ("power", l), z_exponent: Some(e), coeff: x.to_string() });
                }
            }
            None => out.push(Entry { basis: ("power", l), z_exponent: None, coeff: r.to_string() }),
        }
    }
    out
}

fn eq_entries(c: &EqStateClass) -> Vec<Entry> {
    c.entries()
        .iter()
        .map(|(&(j, _), r)| Entry { basis: ("fixed_point", j as u32), z_exponent: None, coeff: r.to_string() })
        .collect()
}

pub fn jfun_rows(p: &ModelParams, equivariant: bool) -> Vec<Row> {
    use rayon::prelude::*;
    (0..=p.max_q_degree)
        .into_par_iter()
        .map(|beta| {
            let c = j_coefficient(beta, p, equivariant);
            let entries = match &c.value {
                None => vec![],
                Some(JValue::NonEquivariant(x)) => noneq_entries(x),
                Some(JValue::Equivariant(x)) => eq_entries(x),
            };
            Row { beta, sector: c.sector, stable: c.stability_tag == StabilityTag::StableSymbolic, entries }
        })
        .collect()
}

pub fn mu_rows(p: &ModelParams) -> Vec<Row> {
    (0..=p.max_q_degree)
        .map(|beta| Row {
            beta,
            sector: p.j_sector(beta),
            stable: !p.epsilon.is_unstable(beta),
            entries: noneq_entries(&mu_coeff(beta, p)),
        })
        .collect()
}

pub fn model_json(p: &ModelParams) -> Value {
    json!({
        "weights": p.weights,
        "d": p.d,
        "num_polys": p.num_polys,
        "max_q_degree": p.max_q_degree,
    })
}

pub fn rows_json(p: &ModelParams, rows: &[Row]) -> Value {
    let coefficients: Vec<Value> = rows
        .iter()
        .map(|r| {
            let entries: Vec<Value> = r
                .entries
                .iter()
                .map(|e| {
                    let mut o = serde_json::Map::new();
                    o.insert(e.basis.0.into(), e.basis.1.into());
                    if let Some(k) = e.z_exponent {
                        o.insert("z_exponent".into(), k.into());
                    }
                    o.insert("coeff".into(), e.coeff.clone().into());
                    Value::Object(o)
                })
                .collect();
            json!({
                "beta": r.beta,
                "sector": r.sector.to_string(),
                "stability": if r.stable { "stable-symbolic" } else { "unstable" },
                "entries": entries,
            })
        })
        .collect();
    json!({ "model": model_json(p), "epsilon": p.epsilon.to_string(), "coefficients": coefficients })
}

pub fn rows_csv(rows: &[Row]) -> String {
    let mut s = String::from("beta,sector,stability,basis,index,z_exponent,coeff\n");
    for r in rows {
        let tag = if r.stable { "stable-symbolic" } else { "unstable" };
        if r.entries.is_empty() {
            s.push_str(&format!("{},{},{tag},,,,\n", r.beta, r.sector));
        }
        for e in &r.entries {
            let z = e.z_exponent.map(|k| k.to_string()).unwrap_or_default();
            s.push_str(&format!("{},{},{tag},{},{},{z},{}\n", r.beta, r.sector, e.basis.0, e.basis.1, e.coeff));
        }
    }
    s
}

fn tex(coeff: &str) -> String {
    coeff.replace('*', " ")
}

pub fn rows_latex(rows: &[Row]) -> String {
    let mut s = String::from("\\begin{tabular}{rrl}\n\\hline\n$\\beta$ & sector & coefficient \\\\\n\\hline\n");
    for r in rows {
        let body = if r.stable {
            "\\text{stable}".to_string()
        } else if r.entries.is_empty() {
            "0".to_string()
        } else {
            let parts: Vec<String> = r
                .entries
                .iter()
                .map(|e| {
                    let basis = match e.basis {
                        ("power", l) => format!("H^{{{l}}}_{{({})}}", r.sector),
                        (_, j) => format!("1^{{{j}}}_{{({})}}", r.sector),
                    };
                    match e.z_exponent {
                        Some(k) => format!("({}) z^{{{k}}} {basis}", tex(&e.coeff)),
                        None => format!("({}) {basis}", tex(&e.coeff)),
                    }
                })
                .collect();
            parts.join(" + ")
        };
        s.push_str(&format!("{} & ${}$ & ${body}$ \\\\\n", r.beta, r.sector));
    }
    s.push_str("\\hline\n\\end{tabular}\n");
    s
}

/// A coefficient read back from a JSON table.
#[derive(Clone, Debug, PartialEq)]
pub enum ReadValue {
    Stable,
    NonEquivariant(StateClass),
    Equivariant(EqStateClass),
}

fn z_pow(n: usize, k: i64) -> RatFunc {
    let z = RatFunc::from_poly(MPoly::monomial(n, Mono::var(n, 0, k.unsigned_abs() as u32), BigRational::from_integer(1.into())));
    if k < 0 {
        z.inv().expect("z is nonzero")
    } else {
        z
    }
}

/// Parse a table written by [`rows_json`] into classes.
pub fn read_rows(v: &Value, p: &ModelParams) -> hybridwc_core::Result<BTreeMap<u32, ReadValue>> {
    let bad = |what: &str| Error::Parse(format!("coefficient table: {what}"));
    let n = p.nvars();
    let mut out = BTreeMap::new();
    for rec in v.get("coefficients").and_then(Value::as_array).ok_or_else(|| bad("missing coefficients"))? {
        let beta = rec.get("beta").and_then(Value::as_u64).ok_or_else(|| bad("missing beta"))? as u32;
        if rec.get("stability").and_then(Value::as_str) == Some("stable-symbolic") {
            out.insert(beta, ReadValue::Stable);
            continue;
        }
        let sector_text = rec.get("sector").and_then(Value::as_str).ok_or_else(|| bad("missing sector"))?;
        let a: i64 = sector_text.split('/').next().and_then(|x| x.parse().ok()).ok_or_else(|| bad("bad sector"))?;
        let m = p.mult(a);
        let entries = rec.get("entries").and_then(Value::as_array).ok_or_else(|| bad("missing entries"))?;
        let mut noneq: BTreeMap<u32, RatFunc> = BTreeMap::new();
        let mut eq = EqStateClass::zero();
        let mut is_eq = false;
        for e in entries {
            let coeff = e.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("missing coeff"))?;
            let mut c = parse_ratfunc(coeff, n)?;
            if let Some(j) = e.get("fixed_point").and_then(Value::as_u64) {
                is_eq = true;
                eq.insert(j as usize, m, c);
                continue;
            }
            let l = e.get("power").and_then(Value::as_u64).ok_or_else(|| bad("entry without basis"))? as u32;
            if let Some(k) = e.get("z_exponent").and_then(Value::as_i64) {
                c = c.mul(&z_pow(n, k));
            }
            let slot = noneq.entry(l).or_insert_with(|| RatFunc::zero(n));
            *slot = slot.add(&c);
        }
        let value = if is_eq {
            ReadValue::Equivariant(eq)
        } else {
            let mut c = StateClass::zero(p, Space::CompactType);
            for (l, r) in noneq {
                c.insert(m, l, r)?;
            }
            ReadValue::NonEquivariant(c)
        };
        out.insert(beta, value);
    }
    Ok(out)
}
