//! Numerical laboratory for the one-dimensional compressible
//! Navier–Stokes–Korteweg system in Lagrangian coordinates.
//!
//! The crate builds smooth wave ansätze (viscous contact wave, approximate
//! rarefaction waves and their composite), evolves perturbed data under the
//! full system, and evaluates energy functionals and residual diagnostics.

pub mod diagnostics;
pub mod error;
pub mod grid;
pub mod model;
pub mod solver;
pub mod waves;

pub use error::{Error, Result};
pub use grid::{adaptive_simpson, Grid};
