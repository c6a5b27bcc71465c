use crate::error::Result;
use crate::waves::CompositeWave;

/// Dirichlet data at and beyond the ends of the grid. The solver asks for the
/// boundary nodes and for two ghost nodes on each side.
pub trait Boundary: Send + Sync {
    /// `((v, u, θ), (v_t, u_t, θ_t))` imposed at position `x` and time `t`.
    fn eval(&self, x: f64, t: f64) -> Result<([f64; 3], [f64; 3])>;
}

/// Constant far-field states: `left` for `x < 0`, `right` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarField {
    pub left: [f64; 3],
    pub right: [f64; 3],
}

impl Boundary for FarField {
    fn eval(&self, x: f64, _t: f64) -> Result<([f64; 3], [f64; 3])> {
        Ok((if x < 0.0 { self.left } else { self.right }, [0.0; 3]))
    }
}

/// Boundary data read off a wave ansatz, so that a rarefaction fan which has
/// reached the ends of the interval stays consistent with the interior.
#[derive(Debug, Clone)]
pub struct AnsatzBoundary {
    wave: CompositeWave,
}

impl AnsatzBoundary {
    pub fn new(wave: CompositeWave) -> Self {
        Self { wave }
    }
}

impl Boundary for AnsatzBoundary {
    fn eval(&self, x: f64, t: f64) -> Result<([f64; 3], [f64; 3])> {
        let s = self.wave.eval(x, t)?;
        Ok(([s.v, s.u, s.theta], [s.v_t, s.u_t, s.theta_t]))
    }
}
