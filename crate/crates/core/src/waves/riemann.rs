//! Middle states of the Riemann problem for the rarefaction-contact-rarefaction
//! pattern: the 1-rarefaction curve from the left state and the 3-rarefaction
//! curve from the right state must reach equal pressure and velocity.

use super::rarefaction::{curve_velocity, isentrope_volume};
use crate::error::{Error, Result};
use crate::model::{positive, Family, ThermoParams};

/// Far-field states `(v₋, u₋, θ₋)` and `(v₊, u₊, θ₊)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndStates {
    pub v_minus: f64,
    pub u_minus: f64,
    pub theta_minus: f64,
    pub v_plus: f64,
    pub u_plus: f64,
    pub theta_plus: f64,
}

impl EndStates {
    pub fn new(minus: [f64; 3], plus: [f64; 3]) -> Self {
        Self {
            v_minus: minus[0],
            u_minus: minus[1],
            theta_minus: minus[2],
            v_plus: plus[0],
            u_plus: plus[1],
            theta_plus: plus[2],
        }
    }

    pub fn minus(&self) -> [f64; 3] {
        [self.v_minus, self.u_minus, self.theta_minus]
    }

    pub fn plus(&self) -> [f64; 3] {
        [self.v_plus, self.u_plus, self.theta_plus]
    }

    pub fn validate(&self) -> Result<()> {
        positive("v_minus", self.v_minus)?;
        positive("theta_minus", self.theta_minus)?;
        positive("v_plus", self.v_plus)?;
        positive("theta_plus", self.theta_plus)?;
        if !(self.u_minus.is_finite() && self.u_plus.is_finite()) {
            return Err(Error::Domain("end velocities must be finite".into()));
        }
        Ok(())
    }
}

/// Intermediate states `(v₋^m, u^m, θ₋^m)` and `(v₊^m, u^m, θ₊^m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiddleStates {
    pub v_minus: f64,
    pub theta_minus: f64,
    pub v_plus: f64,
    pub theta_plus: f64,
    pub u: f64,
    pub p: f64,
    pub s_minus: f64,
    pub s_plus: f64,
}

impl MiddleStates {
    pub fn minus(&self) -> [f64; 3] {
        [self.v_minus, self.u, self.theta_minus]
    }

    pub fn plus(&self) -> [f64; 3] {
        [self.v_plus, self.u, self.theta_plus]
    }
}

struct Side {
    family: Family,
    v: f64,
    u: f64,
    p: f64,
    s: f64,
}

impl Side {
    fn new(thermo: &ThermoParams, family: Family, [v, u, theta]: [f64; 3]) -> Result<Self> {
        Ok(Self {
            family,
            v,
            u,
            p: thermo.pressure(v, theta)?,
            s: thermo.entropy(v, theta)?,
        })
    }

    /// `(v, u)` reached along the rarefaction curve at pressure `p`. The end
    /// pressure maps back to the end state exactly.
    fn at(&self, thermo: &ThermoParams, p: f64) -> Result<(f64, f64)> {
        if p == self.p {
            return Ok((self.v, self.u));
        }
        let v = isentrope_volume(thermo, self.s, p)?;
        Ok((v, curve_velocity(thermo, self.family, self.v, self.u, self.s, v)?))
    }
}

const P_FLOOR: f64 = 1e-8;

/// Solves for the middle states. Fails with [`Error::BracketFailure`] when the
/// end states are not joined by two rarefactions and a contact (a shock would
/// be needed, or the rarefactions would open a vacuum).
pub fn solve_middle_states(ends: &EndStates, thermo: &ThermoParams) -> Result<MiddleStates> {
    ends.validate()?;
    let left = Side::new(thermo, Family::Minus, ends.minus())?;
    let right = Side::new(thermo, Family::Plus, ends.plus())?;
    // u_L(p) - u_R(p) is strictly decreasing in p.
    let mismatch = |p: f64| -> Result<f64> {
        Ok(left.at(thermo, p)?.1 - right.at(thermo, p)?.1)
    };

    let hi0 = left.p.min(right.p);
    let lo0 = P_FLOOR * hi0;
    let f_hi = mismatch(hi0)?;
    let f_lo = mismatch(lo0)?;
    if f_hi > 0.0 || f_lo < 0.0 {
        return Err(Error::BracketFailure { lo: lo0, hi: hi0 });
    }

    let p = if f_hi == 0.0 {
        hi0
    } else {
        // Bisection in ln p, then a final secant polish inside the bracket.
        let (mut lo, mut hi) = (lo0.ln(), hi0.ln());
        let (mut flo, mut fhi) = (f_lo, f_hi);
        for _ in 0..200 {
            if hi - lo <= 1e-15 * hi.abs().max(1.0) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let fm = mismatch(mid.exp())?;
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm > 0.0 {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
                fhi = fm;
            }
        }
        let guess = if flo != fhi { lo - flo * (hi - lo) / (fhi - flo) } else { lo };
        guess.clamp(lo, hi).exp()
    };

    let (v_minus, u_l) = left.at(thermo, p)?;
    let (v_plus, u_r) = right.at(thermo, p)?;
    let theta_minus = if p == left.p { ends.theta_minus } else { p * v_minus / thermo.r() };
    let theta_plus = if p == right.p { ends.theta_plus } else { p * v_plus / thermo.r() };
    let u = if p == left.p {
        u_l
    } else if p == right.p {
        u_r
    } else {
        0.5 * (u_l + u_r)
    };
    Ok(MiddleStates {
        v_minus,
        theta_minus,
        v_plus,
        theta_plus,
        u,
        p,
        s_minus: left.s,
        s_plus: right.s,
    })
}
