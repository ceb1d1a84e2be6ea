//! Exact symbolic engine for genus-zero hybrid-model wall-crossing.
//!
//! Rational functions live in `ℚ(z, a1..aN)`: `z` is the descendant
//! variable and `a1..aN` are the equivariant parameters of the torus acting
//! on the `N` section coordinates.

pub mod algebra;
pub mod error;
pub mod graphs;

pub use error::{Error, Result};
pub mod jfun;
pub mod model;
pub mod state;
pub mod verify;

pub use model::{Epsilon, ModelParams, Multiplicity};
