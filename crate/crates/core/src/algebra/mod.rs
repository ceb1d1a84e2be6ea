//! Exact arithmetic: rationals, sparse polynomials, rational functions,
//! Laurent expansion, residues and truncated q-series.

pub mod factored;
pub mod gcd;
pub mod laurent;
pub mod mpoly;
pub mod parse;
pub mod qseries;
pub mod ratfunc;

pub use factored::Factored;
pub use laurent::{laurent, Direction, Laurent};
pub use mpoly::{int, rat, MPoly, Mono};
pub use qseries::QSeries;
pub use ratfunc::RatFunc;

use crate::error::Result;

/// `residue_z(f, c)`: coefficient of `(z - c)^{-1}` at `z = c`.
pub fn residue_z(f: &RatFunc, c: &MPoly) -> Result<RatFunc> {
    f.residue_z(c)
}

/// `laurent_z(f, direction, k_min, k_max)` in the variable `z`.
pub fn laurent_z(f: &RatFunc, dir: Direction, k_min: i64, k_max: i64) -> Laurent {
    laurent(f, 0, dir, k_min, k_max)
}
