//! Semi-discrete right-hand side.
//!
//! Pressure and the Korteweg stress are differenced with the central `d1`
//! stencil. Viscous and heat fluxes are formed on half nodes,
//! `f_{i+1/2} = avg(μ/v) (u_{i+1} - u_i)/dx`, and differenced once more, so
//! the second-order operators stay compact and do not decouple odd and even
//! nodes.

use super::boundary::{Boundary, FarField};
use super::{check_positive_fields, State};
use crate::error::{check_len, Error, Result};
use crate::grid::Grid;
use crate::model::{CoeffPoint, CoefficientModel, ThermoParams};

/// `K = -κ v_xx/v⁵ + (5κ - vκ_v) v_x²/(2v⁶) - κ_θ v_x θ_x/v⁵`.
#[inline]
pub(crate) fn korteweg_at(c: &CoeffPoint, v: f64, v_x: f64, v_xx: f64, th_x: f64) -> f64 {
    let v5 = v.powi(5);
    -c.kappa * v_xx / v5 + (5.0 * c.kappa - v * c.kappa_v) * v_x * v_x / (2.0 * v5 * v)
        - c.kappa_theta * v_x * th_x / v5
}

/// `F = θκ_θ v_x u_xx/v⁵ + (vκ_vθ - κ_θ) θ u_x v_x²/(2v⁶)`.
#[inline]
pub(crate) fn capillary_at(c: &CoeffPoint, v: f64, th: f64, v_x: f64, u_x: f64, u_xx: f64) -> f64 {
    let v5 = v.powi(5);
    th * c.kappa_theta * v_x * u_xx / v5
        + (v * c.kappa_vtheta - c.kappa_theta) * th * u_x * v_x * v_x / (2.0 * v5 * v)
}

/// Korteweg stress at every node, derivatives from the grid stencils.
pub fn korteweg_stress(state: &State, coeff: &CoefficientModel, grid: &Grid) -> Result<Vec<f64>> {
    check_len(grid.len(), state.len())?;
    state.check_positive()?;
    let v_x = grid.d1(&state.v)?;
    let v_xx = grid.d2(&state.v)?;
    let th_x = grid.d1(&state.theta)?;
    Ok((0..grid.len())
        .map(|i| {
            let c = coeff.eval(state.v[i], state.theta[i]);
            korteweg_at(&c, state.v[i], v_x[i], v_xx[i], th_x[i])
        })
        .collect())
}

/// Capillary work at every node, derivatives from the grid stencils.
pub fn capillary_work(state: &State, coeff: &CoefficientModel, grid: &Grid) -> Result<Vec<f64>> {
    check_len(grid.len(), state.len())?;
    state.check_positive()?;
    let v_x = grid.d1(&state.v)?;
    let u_x = grid.d1(&state.u)?;
    let u_xx = grid.d2(&state.u)?;
    Ok((0..grid.len())
        .map(|i| {
            let c = coeff.eval(state.v[i], state.theta[i]);
            capillary_at(&c, state.v[i], state.theta[i], v_x[i], u_x[i], u_xx[i])
        })
        .collect())
}

/// `(v_t, u_t, θ_t)` with the two end nodes held at the far-field values of
/// `state` (their rows are zero).
pub fn rhs(
    state: &State,
    thermo: &ThermoParams,
    coeff: &CoefficientModel,
    grid: &Grid,
) -> Result<[Vec<f64>; 3]> {
    check_len(grid.len(), state.len())?;
    let n = grid.len();
    let bc = FarField {
        left: [state.v[0], state.u[0], state.theta[0]],
        right: [state.v[n - 1], state.u[n - 1], state.theta[n - 1]],
    };
    let mut work = RhsWork::new(n);
    let mut out = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    let [a, b, c] = &mut out;
    work.eval(
        grid,
        thermo,
        coeff,
        &bc,
        state.t,
        [&state.v, &state.u, &state.theta],
        [a, b, c],
    )?;
    Ok(out)
}

/// Scratch buffers for one right-hand-side evaluation plus the stability
/// numbers gathered along the way.
pub(crate) struct RhsWork {
    ve: Vec<f64>,
    ue: Vec<f64>,
    te: Vec<f64>,
    cp: Vec<CoeffPoint>,
    v_x: Vec<f64>,
    k: Vec<f64>,
    p: Vec<f64>,
    ceff: Vec<f64>,
    visc: Vec<f64>,
    heat: Vec<f64>,
    /// `max μ/v + max α̃/(v C_eff) + max √(κ/v⁵)` from the last evaluation.
    pub d_max: f64,
    /// Largest sound speed from the last evaluation.
    pub c_max: f64,
}

impl RhsWork {
    pub fn new(n: usize) -> Self {
        Self {
            ve: vec![0.0; n + 4],
            ue: vec![0.0; n + 4],
            te: vec![0.0; n + 4],
            cp: vec![CoeffPoint::default(); n],
            v_x: vec![0.0; n],
            k: vec![0.0; n],
            p: vec![0.0; n],
            ceff: vec![0.0; n],
            visc: vec![0.0; n - 1],
            heat: vec![0.0; n - 1],
            d_max: 0.0,
            c_max: 0.0,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn eval(
        &mut self,
        grid: &Grid,
        thermo: &ThermoParams,
        coeff: &CoefficientModel,
        bc: &dyn Boundary,
        t: f64,
        [v, u, th]: [&[f64]; 3],
        [dv, du, dth]: [&mut [f64]; 3],
    ) -> Result<()> {
        let n = grid.len();
        let dx = grid.dx();
        let l = grid.half_width();
        check_positive_fields(t, v, th)?;

        self.ve[2..n + 2].copy_from_slice(v);
        self.ue[2..n + 2].copy_from_slice(u);
        self.te[2..n + 2].copy_from_slice(th);
        for k in 1..=2 {
            let off = k as f64 * dx;
            let (s, _) = bc.eval(-l - off, t)?;
            self.ve[2 - k] = s[0];
            self.ue[2 - k] = s[1];
            self.te[2 - k] = s[2];
            let (s, _) = bc.eval(l + off, t)?;
            self.ve[n + 1 + k] = s[0];
            self.ue[n + 1 + k] = s[1];
            self.te[n + 1 + k] = s[2];
        }

        let cv = thermo.cv();
        let r = thermo.r();
        let gamma = thermo.gamma();
        let h1 = 0.5 / dx;
        let h2 = 1.0 / (dx * dx);
        let (mut mu_max, mut al_max, mut ka_max, mut c_max) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
        for i in 0..n {
            let j = i + 2;
            let vi = self.ve[j];
            let ti = self.te[j];
            let c = coeff.eval(vi, ti);
            let v_x = h1 * (self.ve[j + 1] - self.ve[j - 1]);
            let v_xx = h2 * (self.ve[j + 1] - 2.0 * vi + self.ve[j - 1]);
            let th_x = h1 * (self.te[j + 1] - self.te[j - 1]);
            self.k[i] = korteweg_at(&c, vi, v_x, v_xx, th_x);
            let p = r * ti / vi;
            self.p[i] = p;
            let v5 = vi.powi(5);
            let ce = cv - 0.5 * ti * c.kappa_thetatheta * v_x * v_x / v5;
            if !(ce > 0.0) {
                return Err(Error::ModelViolation(format!(
                    "effective heat capacity {ce:.6e} <= 0 at node {i}, t = {t}"
                )));
            }
            self.ceff[i] = ce;
            self.v_x[i] = v_x;
            mu_max = mu_max.max(c.mu / vi);
            al_max = al_max.max(c.alpha / (vi * ce));
            ka_max = ka_max.max((c.kappa.max(0.0) / v5).sqrt());
            c_max = c_max.max((gamma * p / vi).sqrt());
            self.cp[i] = c;
        }
        self.d_max = mu_max + al_max + ka_max;
        self.c_max = c_max;

        for i in 0..n - 1 {
            let inv = 1.0 / dx;
            let m = 0.5 * (self.cp[i].mu / v[i] + self.cp[i + 1].mu / v[i + 1]);
            let a = 0.5 * (self.cp[i].alpha / v[i] + self.cp[i + 1].alpha / v[i + 1]);
            self.visc[i] = m * inv * (u[i + 1] - u[i]);
            self.heat[i] = a * inv * (th[i + 1] - th[i]);
        }

        for i in 1..n - 1 {
            let u_x = h1 * (u[i + 1] - u[i - 1]);
            let u_xx = h2 * (u[i + 1] - 2.0 * u[i] + u[i - 1]);
            let c = &self.cp[i];
            dv[i] = u_x;
            du[i] = -h1 * (self.p[i + 1] - self.p[i - 1])
                + (self.visc[i] - self.visc[i - 1]) / dx
                + h1 * (self.k[i + 1] - self.k[i - 1]);
            let f = capillary_at(c, v[i], th[i], self.v_x[i], u_x, u_xx);
            dth[i] = (-self.p[i] * u_x
                + (self.heat[i] - self.heat[i - 1]) / dx
                + c.mu * u_x * u_x / v[i]
                + f)
                / self.ceff[i];
        }
        let (_, rl) = bc.eval(-l, t)?;
        let (_, rr) = bc.eval(l, t)?;
        dv[0] = rl[0];
        du[0] = rl[1];
        dth[0] = rl[2];
        dv[n - 1] = rr[0];
        du[n - 1] = rr[1];
        dth[n - 1] = rr[2];
        Ok(())
    }
}
