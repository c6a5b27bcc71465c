//! Smooth approximate rarefaction waves.
//!
//! The wave is `λ_±(V, s_a) = w(t, x)` along the isentrope through an anchor
//! state, with `w` the smoothed-step Burgers solution. Velocity and temperature
//! follow from the rarefaction-curve relations.

use super::burgers::Burgers;
use super::WaveState;
use crate::error::{Error, Result};
use crate::model::{positive, Family, ThermoParams};

/// Volume at pressure `p` on the isentrope with entropy `s`.
pub fn isentrope_volume(thermo: &ThermoParams, s: f64, p: f64) -> Result<f64> {
    positive("p", p)?;
    Ok((thermo.a() * (thermo.delta() * s / thermo.r()).exp() / p).powf(1.0 / thermo.gamma()))
}

/// Velocity at volume `v` along the rarefaction curve of `family` through
/// `(v_a, u_a)` with entropy `s`.
pub fn curve_velocity(
    thermo: &ThermoParams,
    family: Family,
    v_a: f64,
    u_a: f64,
    s: f64,
    v: f64,
) -> Result<f64> {
    positive("v_a", v_a)?;
    positive("v", v)?;
    let d = thermo.delta();
    let c = 2.0 * thermo.speed_factor(s).sqrt() / d;
    Ok(u_a - family.sign() * c * (v_a.powf(-0.5 * d) - v.powf(-0.5 * d)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RarefactionWave {
    thermo: ThermoParams,
    family: Family,
    anchor: [f64; 3],
    k: f64,
    burgers: Burgers,
}

impl RarefactionWave {
    /// Wave connecting the far-field state `far = (v, u, θ)` to the middle
    /// volume `v_mid` on the same isentrope. For `Minus` the far state is the
    /// left end, for `Plus` the right end.
    pub fn new(thermo: &ThermoParams, family: Family, far: [f64; 3], v_mid: f64) -> Result<Self> {
        let [v, _, theta] = far;
        let s = thermo.entropy(v, theta)?;
        let w_far = thermo.lambda(v, s, family)?;
        let w_mid = thermo.lambda(v_mid, s, family)?;
        let (w_minus, w_plus) = match family {
            Family::Minus => (w_far, w_mid),
            Family::Plus => (w_mid, w_far),
        };
        let burgers = Burgers::new(w_minus, w_plus).map_err(|_| {
            Error::InvalidParameter(format!(
                "middle volume {v_mid} is not reached from {v} by an expansion"
            ))
        })?;
        Ok(Self {
            thermo: *thermo,
            family,
            anchor: far,
            k: thermo.speed_factor(s),
            burgers,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn burgers(&self) -> &Burgers {
        &self.burgers
    }

    pub fn is_degenerate(&self) -> bool {
        self.burgers.w_minus() == self.burgers.w_plus()
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<WaveState> {
        let [va, ua, tha] = self.anchor;
        if self.is_degenerate() {
            return Ok(WaveState::constant(va, ua, tha));
        }
        let b = self.burgers.eval_derivs(x, t);
        let w = b.w;
        if w == 0.0 || w.signum() != self.family.sign() {
            return Err(Error::Domain(format!(
                "Burgers value {w} has the wrong sign for this wave family"
            )));
        }
        let g = self.thermo.gamma();
        let d = self.thermo.delta();
        let m = 2.0 / (g + 1.0);

        let v = (self.k / (w * w)).powf(1.0 / (g + 1.0));
        let v_w = -m * v / w;
        let v_ww = m * (m + 1.0) * v / (w * w);
        let v_www = -m * (m + 1.0) * (m + 2.0) * v / (w * w * w);
        let v_x = v_w * b.w_x;
        let v_xx = v_ww * b.w_x * b.w_x + v_w * b.w_xx;
        let v_xxx = v_www * b.w_x.powi(3) + 3.0 * v_ww * b.w_x * b.w_xx + v_w * b.w_xxx;

        let c = 2.0 * self.k.sqrt() / d;
        let u = ua - self.family.sign() * c * (va.powf(-0.5 * d) - v.powf(-0.5 * d));
        let u_x = -w * v_x;
        let u_xx = -b.w_x * v_x - w * v_xx;

        let n = -d;
        let theta = tha * (va / v).powf(d);
        let th_v = n * theta / v;
        let th_vv = n * (n - 1.0) * theta / (v * v);
        let th_vvv = n * (n - 1.0) * (n - 2.0) * theta / (v * v * v);
        let theta_x = th_v * v_x;
        let theta_xx = th_vv * v_x * v_x + th_v * v_xx;
        let theta_xxx = th_vvv * v_x.powi(3) + 3.0 * th_vv * v_x * v_xx + th_v * v_xxx;

        let v_t = -w * v_x;
        Ok(WaveState {
            v,
            u,
            theta,
            v_x,
            v_xx,
            v_xxx,
            u_x,
            u_xx,
            theta_x,
            theta_xx,
            theta_xxx,
            v_t,
            u_t: w * w * v_x,
            theta_t: th_v * v_t,
        })
    }
}
