//! Perturbation fields, the basic energy `E(t)`, the dissipation `D(t)` and
//! the Kanel functionals.

use crate::error::{check_len, Error, Result};
use crate::grid::{adaptive_simpson, Grid};
use crate::model::{phi_unchecked, CoefficientModel, ThermoParams, ThetaWindow};
use crate::solver::State;
use crate::waves::WaveFields;

/// `φ = v - V`, `ψ = u - U`, `ζ = θ - Θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationFields {
    pub phi: Vec<f64>,
    pub psi: Vec<f64>,
    pub zeta: Vec<f64>,
}

impl PerturbationFields {
    pub fn new(state: &State, ansatz: &WaveFields) -> Result<Self> {
        check_len(state.len(), ansatz.v.len())?;
        let diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>();
        Ok(Self {
            phi: diff(&state.v, &ansatz.v),
            psi: diff(&state.u, &ansatz.u),
            zeta: diff(&state.theta, &ansatz.theta),
        })
    }
}

fn ratio_check(what: &str, i: usize, r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be positive, got {r} at node {i}")))
    }
}

/// `∫ κ(v,θ) v_x² / (2v⁵) dx`.
pub fn capillary_energy(state: &State, coeff: &CoefficientModel, grid: &Grid) -> Result<f64> {
    check_len(grid.len(), state.len())?;
    let v_x = grid.d1(&state.v)?;
    Ok(grid.trapezoid((0..grid.len()).map(|i| {
        let v = state.v[i];
        coeff.kappa(v, state.theta[i]) * v_x[i] * v_x[i] / (2.0 * v.powi(5))
    })))
}

/// `E = ∫ [RΘΦ(v/V) + ψ²/2 + (R/δ)ΘΦ(θ/Θ) + κ v_x²/(2v⁵)] dx`.
pub fn basic_energy(
    state: &State,
    ansatz: &WaveFields,
    thermo: &ThermoParams,
    coeff: &CoefficientModel,
    grid: &Grid,
) -> Result<f64> {
    check_len(grid.len(), state.len())?;
    check_len(grid.len(), ansatz.v.len())?;
    let r = thermo.r();
    let cv = thermo.cv();
    let mut dens = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let rv = state.v[i] / ansatz.v[i];
        let rt = state.theta[i] / ansatz.theta[i];
        ratio_check("v/V", i, rv)?;
        ratio_check("theta/Theta", i, rt)?;
        let psi = state.u[i] - ansatz.u[i];
        let th = ansatz.theta[i];
        dens.push(r * th * phi_unchecked(rv) + 0.5 * psi * psi + cv * th * phi_unchecked(rt));
    }
    Ok(grid.integrate(&dens)? + capillary_energy(state, coeff, grid)?)
}

/// `D = ∫ [μΘψ_x²/(θv) + α̃Θζ_x²/(vθ²)] dx`.
pub fn dissipation(
    state: &State,
    ansatz: &WaveFields,
    coeff: &CoefficientModel,
    grid: &Grid,
) -> Result<f64> {
    check_len(grid.len(), state.len())?;
    let p = PerturbationFields::new(state, ansatz)?;
    let psi_x = grid.d1(&p.psi)?;
    let zeta_x = grid.d1(&p.zeta)?;
    Ok(grid.trapezoid((0..grid.len()).map(|i| {
        let (v, th) = (state.v[i], state.theta[i]);
        let c = coeff.eval(v, th);
        let big = ansatz.theta[i];
        c.mu * big * psi_x[i] * psi_x[i] / (th * v) + c.alpha * big * zeta_x[i] * zeta_x[i] / (v * th * th)
    })))
}

#[derive(Debug, Clone, PartialEq)]
pub struct KanelReport {
    /// `Φ̄(ṽ)` at each node.
    pub phi_bar: Vec<f64>,
    /// `Ψ(ṽ)` at each node.
    pub psi: Vec<f64>,
    pub phi_bar_max: f64,
    pub psi_max: f64,
    /// `‖√Φ(ṽ)‖ · ‖μ₁(ṽ) ṽ_x / ṽ‖`, which bounds `sup |Φ̄(ṽ)|`.
    pub cauchy_schwarz_bound: f64,
}

impl KanelReport {
    pub fn bound_holds(&self) -> bool {
        self.phi_bar_max <= self.cauchy_schwarz_bound
    }
}

/// Integrands of `Φ̄` and `Ψ`.
fn kanel_integrands(
    coeff: &CoefficientModel,
    window: ThetaWindow,
) -> (impl Fn(f64) -> f64 + '_, impl Fn(f64) -> f64 + '_) {
    let phi_bar = move |eta: f64| phi_unchecked(eta).max(0.0).sqrt() / eta * coeff.mu1(eta, window);
    let psi = move |eta: f64| {
        phi_unchecked(eta).max(0.0).sqrt() * eta.powf(-2.5) * coeff.kappa1(eta, window).max(0.0).sqrt()
    };
    (phi_bar, psi)
}

/// `Φ̄(s) = ∫₁^s √Φ(η)/η μ₁(η) dη`.
pub fn kanel_phi_bar(s: f64, coeff: &CoefficientModel, window: ThetaWindow) -> f64 {
    let (f, _) = kanel_integrands(coeff, window);
    adaptive_simpson(&f, 1.0, s, 1e-12)
}

/// `Ψ(s) = ∫₁^s √Φ(η) η^{-5/2} √κ₁(η) dη`.
pub fn kanel_psi(s: f64, coeff: &CoefficientModel, window: ThetaWindow) -> f64 {
    let (_, f) = kanel_integrands(coeff, window);
    adaptive_simpson(&f, 1.0, s, 1e-12)
}

/// Kanel functionals of `ṽ = v/V` with the Cauchy–Schwarz right side.
pub fn kanel_functionals(
    v: &[f64],
    big_v: &[f64],
    coeff: &CoefficientModel,
    window: ThetaWindow,
    grid: &Grid,
) -> Result<KanelReport> {
    check_len(grid.len(), v.len())?;
    check_len(grid.len(), big_v.len())?;
    let mut tv = Vec::with_capacity(v.len());
    for (i, (a, b)) in v.iter().zip(big_v).enumerate() {
        if !(*a > 0.0 && *b > 0.0) {
            return Err(Error::Positivity {
                t: f64::NAN,
                what: "v",
                node: i,
                value: if *a > 0.0 { *b } else { *a },
            });
        }
        tv.push(a / b);
    }
    let phi_bar: Vec<f64> = tv.iter().map(|&s| kanel_phi_bar(s, coeff, window)).collect();
    let psi: Vec<f64> = tv.iter().map(|&s| kanel_psi(s, coeff, window)).collect();
    let tv_x = grid.d1(&tv)?;
    let root_phi = grid.trapezoid(tv.iter().map(|&s| phi_unchecked(s).max(0.0))).sqrt();
    let grad = grid
        .trapezoid(
            tv.iter()
                .zip(&tv_x)
                .map(|(&s, &sx)| (coeff.mu1(s, window) * sx / s).powi(2)),
        )
        .sqrt();
    let amax = |f: &[f64]| f.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    Ok(KanelReport {
        phi_bar_max: amax(&phi_bar),
        psi_max: amax(&psi),
        phi_bar,
        psi,
        cauchy_schwarz_bound: root_phi * grad,
    })
}
