//! Method-of-lines solver for the Navier–Stokes–Korteweg system
//!
//! ```text
//! v_t - u_x = 0
//! u_t + p_x = (μ u_x / v)_x + K_x
//! C_eff θ_t + p u_x = (α̃ θ_x / v)_x + μ u_x² / v + F
//! ```
//!
//! on a truncated interval, with Dirichlet data at both ends supplied by a
//! [`Boundary`] and classical RK4 in time.

mod boundary;
pub(crate) mod rhs;
mod stepper;

pub use boundary::{AnsatzBoundary, Boundary, FarField};
pub use rhs::{capillary_work, korteweg_stress, rhs};
pub use stepper::{AdmissibleBox, RunStats, Solver, SolverSettings};
pub(crate) use stepper::min_max;

use crate::error::{check_len, Error, Result};
use crate::grid::Grid;

/// Fields `(v, u, θ)` on a grid at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub t: f64,
    pub v: Vec<f64>,
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
}

impl State {
    pub fn new(t: f64, v: Vec<f64>, u: Vec<f64>, theta: Vec<f64>) -> Result<Self> {
        check_len(v.len(), u.len())?;
        check_len(v.len(), theta.len())?;
        let s = Self { t, v, u, theta };
        s.check_positive()?;
        Ok(s)
    }

    pub fn constant(grid: &Grid, v: f64, u: f64, theta: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(0.0, vec![v; n], vec![u; n], vec![theta; n])
    }

    /// Samples `f(x) = (v, u, θ)` at every node.
    pub fn from_fn(grid: &Grid, t: f64, f: impl Fn(f64) -> [f64; 3]) -> Result<Self> {
        let n = grid.len();
        let (mut v, mut u, mut th) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
        for x in grid.nodes() {
            let [a, b, c] = f(x);
            v.push(a);
            u.push(b);
            th.push(c);
        }
        Self::new(t, v, u, th)
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn check_positive(&self) -> Result<()> {
        check_positive_fields(self.t, &self.v, &self.theta)
    }
}

pub(crate) fn check_positive_fields(t: f64, v: &[f64], theta: &[f64]) -> Result<()> {
    for (what, f) in [("v", v), ("theta", theta)] {
        if let Some((node, &value)) = f.iter().enumerate().find(|(_, x)| !(**x > 0.0 && x.is_finite())) {
            return Err(Error::Positivity { t, what, node, value });
        }
    }
    Ok(())
}
