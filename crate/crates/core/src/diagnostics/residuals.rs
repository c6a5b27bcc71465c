//! Defects of the wave ansätze in the viscous, heat-conducting system
//! (capillarity excluded), evaluated from the analytic ansatz derivatives.

use crate::error::Result;
use crate::grid::Grid;
use crate::model::{CoefficientModel, ThermoParams};
use crate::solver::rhs::{capillary_at, korteweg_at};
use crate::waves::{CompositeWave, ContactWave, WaveState};

/// `(μ(V,Θ) U_x / V)_x`.
fn viscous_flux_x(coeff: &CoefficientModel, s: &WaveState) -> f64 {
    let c = coeff.eval(s.v, s.theta);
    (c.mu_v * s.v_x + c.mu_theta * s.theta_x) * s.u_x / s.v
        + c.mu * (s.u_xx / s.v - s.u_x * s.v_x / (s.v * s.v))
}

/// `(α̃(V,Θ) Θ_x / V)_x`.
fn heat_flux_x(coeff: &CoefficientModel, s: &WaveState) -> f64 {
    let c = coeff.eval(s.v, s.theta);
    (c.alpha_v * s.v_x + c.alpha_theta * s.theta_x) * s.theta_x / s.v
        + c.alpha * (s.theta_xx / s.v - s.theta_x * s.v_x / (s.v * s.v))
}

/// `R₁ = U_t - (μU_x/V)_x` and `R₂ = -μU_x²/V` at one point.
pub fn contact_residuals_at(coeff: &CoefficientModel, s: &WaveState) -> (f64, f64) {
    let mu = coeff.mu(s.v, s.theta);
    (s.u_t - viscous_flux_x(coeff, s), -mu * s.u_x * s.u_x / s.v)
}

/// `(R₁, R₂)` of the contact wave at every node.
pub fn contact_residuals(
    contact: &ContactWave,
    coeff: &CoefficientModel,
    grid: &Grid,
    t: f64,
) -> (Vec<f64>, Vec<f64>) {
    (0..grid.len())
        .map(|i| contact_residuals_at(coeff, &contact.eval(grid.x(i), t)))
        .unzip()
}

/// `G = U_t + P_x - (μU_x/V)_x` and
/// `H = (R/δ)Θ_t + P U_x - (α̃Θ_x/V)_x - μU_x²/V` at one point.
pub fn composite_residuals_at(thermo: &ThermoParams, coeff: &CoefficientModel, s: &WaveState) -> (f64, f64) {
    let r = thermo.r();
    let p = r * s.theta / s.v;
    let p_x = r * (s.theta_x / s.v - s.theta * s.v_x / (s.v * s.v));
    let mu = coeff.mu(s.v, s.theta);
    let g = s.u_t + p_x - viscous_flux_x(coeff, s);
    let h = thermo.cv() * s.theta_t + p * s.u_x - heat_flux_x(coeff, s) - mu * s.u_x * s.u_x / s.v;
    (g, h)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositeResiduals {
    pub g: Vec<f64>,
    pub h: Vec<f64>,
    pub g_l1: f64,
    pub h_l1: f64,
}

impl CompositeResiduals {
    /// `‖G‖_{L¹} + ‖H‖_{L¹}`.
    pub fn total_l1(&self) -> f64 {
        self.g_l1 + self.h_l1
    }
}

pub fn composite_residuals(wave: &CompositeWave, grid: &Grid, t: f64) -> Result<CompositeResiduals> {
    let mut g = Vec::with_capacity(grid.len());
    let mut h = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let s = wave.eval(grid.x(i), t)?;
        let (a, b) = composite_residuals_at(wave.thermo(), wave.coefficients(), &s);
        g.push(a);
        h.push(b);
    }
    let g_l1 = grid.l1_norm(&g)?;
    let h_l1 = grid.l1_norm(&h)?;
    Ok(CompositeResiduals { g, h, g_l1, h_l1 })
}

/// Capillary part of the ansatz defect in the full system: `-K(V,Θ)_x` in
/// the momentum equation and `(C_eff - c_v)Θ_t - F` in the energy equation.
/// `K_x` is taken with the grid `d1` stencil.
pub fn capillary_defect(wave: &CompositeWave, grid: &Grid, t: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let coeff = wave.coefficients();
    let mut k = Vec::with_capacity(grid.len());
    let mut e = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let s = wave.eval(grid.x(i), t)?;
        let c = coeff.eval(s.v, s.theta);
        k.push(korteweg_at(&c, s.v, s.v_x, s.v_xx, s.theta_x));
        let extra_cv = -0.5 * s.theta * c.kappa_thetatheta * s.v_x * s.v_x / s.v.powi(5);
        e.push(extra_cv * s.theta_t - capillary_at(&c, s.v, s.theta, s.v_x, s.u_x, s.u_xx));
    }
    let k_x = grid.d1(&k)?.into_iter().map(|x| -x).collect();
    Ok((k_x, e))
}
