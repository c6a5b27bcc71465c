//! Thermodynamic closure, transport coefficients and their structural checks.

mod assumptions;
mod coefficients;
mod thermo;

pub use assumptions::{check_assumptions, AssumptionReport, Concavity, GrowthExponents};
pub use coefficients::{CoeffPoint, CoefficientModel, ThetaWindow};
pub use thermo::{phi_entropy, Family, ThermoParams};

pub(crate) use thermo::{phi_unchecked, positive};

use crate::error::{Error, Result};

/// Heat capacity multiplying θ_t in the energy equation,
/// `C_v - (θ/2) κ_θθ v_x² / v⁵`.
///
/// A nonpositive value means the coefficient model is inadmissible.
pub fn effective_heat_capacity(
    thermo: &ThermoParams,
    coeff: &CoefficientModel,
    v: f64,
    theta: f64,
    v_x: f64,
) -> Result<f64> {
    positive("v", v)?;
    positive("theta", theta)?;
    let c = heat_capacity_from(thermo.cv(), coeff.eval(v, theta).kappa_thetatheta, v, theta, v_x);
    if c > 0.0 {
        Ok(c)
    } else {
        Err(Error::ModelViolation(format!(
            "effective heat capacity {c:.6e} <= 0 at v = {v}, theta = {theta}, v_x = {v_x}"
        )))
    }
}

#[inline]
pub(crate) fn heat_capacity_from(cv: f64, kappa_tt: f64, v: f64, theta: f64, v_x: f64) -> f64 {
    let v2 = v * v;
    cv - 0.5 * theta * kappa_tt * v_x * v_x / (v2 * v2 * v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_gives_cv() {
        let t = ThermoParams::new(1.0, 1.4, 1.0).unwrap();
        let m = CoefficientModel::Default {
            mu0: 1.0,
            kappa0: 1.0,
            alpha0: 1.0,
            eps: 0.1,
            k1: 2.0,
        };
        assert_eq!(effective_heat_capacity(&t, &m, 1.2, 0.9, 0.0).unwrap(), t.cv());
        let c = effective_heat_capacity(&t, &m, 1.2, 0.9, 3.0).unwrap();
        assert!(c >= t.cv());
    }

    #[test]
    fn hand_evaluated_case() {
        // C_v = 2.5, θ = 1, v = 1, v_x = 1, κ_θθ = -2
        assert_eq!(heat_capacity_from(2.5, -2.0, 1.0, 1.0, 1.0), 3.5);
    }

    #[test]
    fn nonpositive_capacity_is_a_violation() {
        // κ_θθ > 0 can drive the capacity negative; no family here does, so
        // exercise the guard through the raw formula and the error path.
        assert!(heat_capacity_from(1.0, 4.0, 1.0, 1.0, 1.0) < 0.0);
        let t = ThermoParams::new(1.0, 1.4, 1.0).unwrap();
        let m = CoefficientModel::Constant {
            mu: 1.0,
            kappa: 1.0,
            alpha: 1.0,
        };
        assert!(effective_heat_capacity(&t, &m, -1.0, 1.0, 0.0).is_err());
    }
}
