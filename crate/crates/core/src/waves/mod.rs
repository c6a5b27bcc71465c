//! Smooth wave ansätze: Burgers-driven approximate rarefaction waves, the
//! self-similar viscous contact wave, Riemann middle states and their
//! composite.

mod burgers;
mod composite;
mod contact;
mod rarefaction;
mod riemann;
mod selfsimilar;

pub use burgers::{burgers_eval, Burgers, BurgersPoint};
pub use composite::{CompositeWave, WaveMode};
pub use contact::ContactWave;
pub use rarefaction::{curve_velocity, isentrope_volume, RarefactionWave};
pub use riemann::{solve_middle_states, EndStates, MiddleStates};
pub use selfsimilar::{default_xi_half_width, solve_selfsimilar, SelfSimilarProfile};

use std::ops::{Add, Sub};

/// Value of an ansatz `(V, U, Θ)` at one `(t, x)` with the spatial and
/// temporal derivatives the solver and diagnostics consume.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WaveState {
    pub v: f64,
    pub u: f64,
    pub theta: f64,
    pub v_x: f64,
    pub v_xx: f64,
    pub v_xxx: f64,
    pub u_x: f64,
    pub u_xx: f64,
    pub theta_x: f64,
    pub theta_xx: f64,
    pub theta_xxx: f64,
    pub v_t: f64,
    pub u_t: f64,
    pub theta_t: f64,
}

impl WaveState {
    /// A constant state with all derivatives zero.
    pub fn constant(v: f64, u: f64, theta: f64) -> Self {
        Self {
            v,
            u,
            theta,
            ..Self::default()
        }
    }

    fn zip(self, o: Self, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            v: f(self.v, o.v),
            u: f(self.u, o.u),
            theta: f(self.theta, o.theta),
            v_x: f(self.v_x, o.v_x),
            v_xx: f(self.v_xx, o.v_xx),
            v_xxx: f(self.v_xxx, o.v_xxx),
            u_x: f(self.u_x, o.u_x),
            u_xx: f(self.u_xx, o.u_xx),
            theta_x: f(self.theta_x, o.theta_x),
            theta_xx: f(self.theta_xx, o.theta_xx),
            theta_xxx: f(self.theta_xxx, o.theta_xxx),
            v_t: f(self.v_t, o.v_t),
            u_t: f(self.u_t, o.u_t),
            theta_t: f(self.theta_t, o.theta_t),
        }
    }
}

impl Add for WaveState {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.zip(o, |a, b| a + b)
    }
}

impl Sub for WaveState {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.zip(o, |a, b| a - b)
    }
}

/// Ansatz fields sampled on a grid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WaveFields {
    pub v: Vec<f64>,
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
    pub v_x: Vec<f64>,
    pub u_x: Vec<f64>,
    pub theta_x: Vec<f64>,
    pub v_t: Vec<f64>,
    pub u_t: Vec<f64>,
    pub theta_t: Vec<f64>,
}

impl FromIterator<WaveState> for WaveFields {
    fn from_iter<I: IntoIterator<Item = WaveState>>(iter: I) -> Self {
        let mut f = WaveFields::default();
        for s in iter {
            f.v.push(s.v);
            f.u.push(s.u);
            f.theta.push(s.theta);
            f.v_x.push(s.v_x);
            f.u_x.push(s.u_x);
            f.theta_x.push(s.theta_x);
            f.v_t.push(s.v_t);
            f.u_t.push(s.u_t);
            f.theta_t.push(s.theta_t);
        }
        f
    }
}
