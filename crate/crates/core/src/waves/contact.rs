//! Viscous contact wave built from the self-similar profile.
//!
//! With `ξ = x/√(1+t)`: `Θ(t,x) = Θ(ξ)`, `V = RΘ/p₊` and
//! `U = u_a + (γ-1)/(γR) α̂(Θ) Θ_x/Θ`. Writing `Q(ξ) = α̂(Θ)Θ'/Θ`, the profile
//! equation gives `aQ' = -ξΘ'/2`, which makes `V_t = U_x` hold pointwise.

use super::selfsimilar::SelfSimilarProfile;
use super::WaveState;
use crate::model::ThermoParams;

#[derive(Debug, Clone, PartialEq)]
pub struct ContactWave {
    profile: SelfSimilarProfile,
    u_anchor: f64,
    /// `(γ-1)/(γR)`.
    c: f64,
}

impl ContactWave {
    pub fn new(profile: SelfSimilarProfile, thermo: &ThermoParams, u_anchor: f64) -> Self {
        Self {
            profile,
            u_anchor,
            c: thermo.delta() / (thermo.gamma() * thermo.r()),
        }
    }

    pub fn profile(&self) -> &SelfSimilarProfile {
        &self.profile
    }

    pub fn u_anchor(&self) -> f64 {
        self.u_anchor
    }

    pub fn eval(&self, x: f64, t: f64) -> WaveState {
        let pr = &self.profile;
        let s = 1.0 / (1.0 + t).sqrt();
        let xi = x * s;
        let p = pr.eval_point(xi);
        let a = pr.a();
        let (ah, _) = pr.alpha_hat(p.theta);

        let q = ah * p.d1 / p.theta;
        let q1 = -0.5 * xi * p.d1 / a;
        let q2 = -0.5 * (p.d1 + xi * p.d2) / a;

        let ratio = pr.gas_constant() / pr.p_plus();
        let s2 = s * s;
        let s3 = s2 * s;
        let theta_x = s * p.d1;
        let theta_xx = s2 * p.d2;
        let theta_xxx = s3 * p.d3;
        let theta_t = -0.5 * xi * s2 * p.d1;
        WaveState {
            v: ratio * p.theta,
            u: self.u_anchor + self.c * s * q,
            theta: p.theta,
            v_x: ratio * theta_x,
            v_xx: ratio * theta_xx,
            v_xxx: ratio * theta_xxx,
            u_x: self.c * s2 * q1,
            u_xx: self.c * s3 * q2,
            theta_x,
            theta_xx,
            theta_xxx,
            v_t: ratio * theta_t,
            u_t: -0.5 * self.c * s3 * (q + xi * q1),
            theta_t,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CoefficientModel;
    use crate::waves::solve_selfsimilar;

    #[test]
    fn mass_equation_holds_pointwise() {
        let th = ThermoParams::new(1.0, 1.4, 1.0).unwrap();
        let c = CoefficientModel::Default {
            mu0: 1.0,
            kappa0: 0.1,
            alpha0: 1.0,
            eps: 0.01,
            k1: 1.0,
        };
        let pr = solve_selfsimilar(1.0, 1.2, 1.0, &th, &c, None, 2001).unwrap();
        let w = ContactWave::new(pr, &th, 0.0);
        for &(x, t) in &[(0.0, 0.0), (0.7, 1.0), (-3.0, 5.0), (10.0, 50.0)] {
            let p = w.eval(x, t);
            assert!((p.v_t - p.u_x).abs() < 1e-14, "({x},{t})");
        }
        // time derivative of U against differences
        let h = 1e-4;
        let p = w.eval(0.8, 2.0);
        let fd = (w.eval(0.8, 2.0 + h).u - w.eval(0.8, 2.0 - h).u) / (2.0 * h);
        assert!((p.u_t - fd).abs() < 1e-6);
        let fd = (w.eval(0.8 + h, 2.0).u_x - w.eval(0.8 - h, 2.0).u_x) / (2.0 * h);
        assert!((p.u_xx - fd).abs() < 1e-6);
    }

    #[test]
    fn flat_profile_is_constant_state() {
        let th = ThermoParams::new(1.0, 1.4, 1.0).unwrap();
        let c = CoefficientModel::Constant {
            mu: 1.0,
            kappa: 0.0,
            alpha: 1.0,
        };
        let pr = solve_selfsimilar(2.0, 2.0, 2.0, &th, &c, None, 101).unwrap();
        let p = ContactWave::new(pr, &th, 0.4).eval(1.0, 3.0);
        assert_eq!((p.v, p.u, p.theta), (1.0, 0.4, 2.0));
    }
}
