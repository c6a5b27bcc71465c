//! Weighted space-time estimate for the heat-kernel pair and the Gaussian
//! envelope of the contact wave.

use super::heat_kernel::HeatKernelPair;
use crate::error::{check_len, Error, Result};
use crate::grid::Grid;
use crate::waves::ContactWave;
use std::f64::consts::PI;

/// Terms of `∬h²w² ≤ 4π‖h(0)‖² + 4πδα⁻¹∬h_x² + (8α/δ)∬h_t h g²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HuangTerms {
    pub lhs: f64,
    pub initial: f64,
    pub gradient: f64,
    pub coupling: f64,
}

impl HuangTerms {
    pub fn rhs(&self) -> f64 {
        self.initial + self.gradient + self.coupling
    }

    pub fn slack(&self) -> f64 {
        self.rhs() - self.lhs
    }

    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs()
    }
}

/// Evaluates every term from samples `h(t_k, ·)`, `h_x`, `h_t` at times
/// `times` (trapezoid rule in time and space).
pub fn huang_estimate_terms(
    times: &[f64],
    h: &[Vec<f64>],
    h_x: &[Vec<f64>],
    h_t: &[Vec<f64>],
    pair: &HeatKernelPair,
    grid: &Grid,
) -> Result<HuangTerms> {
    let m = times.len();
    if m == 0 || h.len() != m || h_x.len() != m || h_t.len() != m {
        return Err(Error::SamplingMismatch(format!(
            "{m} times, {} h samples, {} h_x samples, {} h_t samples",
            h.len(),
            h_x.len(),
            h_t.len()
        )));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::SamplingMismatch("sample times must increase".into()));
    }
    for k in 0..m {
        for f in [&h[k], &h_x[k], &h_t[k]] {
            check_len(grid.len(), f.len()).map_err(|_| {
                Error::SamplingMismatch(format!("sample {k} has {} nodes, grid has {}", f.len(), grid.len()))
            })?;
        }
    }
    let mut lhs_t = Vec::with_capacity(m);
    let mut grad_t = Vec::with_capacity(m);
    let mut coup_t = Vec::with_capacity(m);
    for k in 0..m {
        let t = times[k];
        lhs_t.push(grid.trapezoid((0..grid.len()).map(|i| {
            let w = pair.w(t, grid.x(i));
            h[k][i] * h[k][i] * w * w
        })));
        grad_t.push(grid.trapezoid(h_x[k].iter().map(|x| x * x)));
        coup_t.push(grid.trapezoid((0..grid.len()).map(|i| {
            let g = pair.g(t, grid.x(i));
            h_t[k][i] * h[k][i] * g * g
        })));
    }
    let time_trap = |f: &[f64]| {
        times
            .windows(2)
            .zip(f.windows(2))
            .map(|(t, y)| 0.5 * (t[1] - t[0]) * (y[0] + y[1]))
            .sum::<f64>()
    };
    let (a, d) = (pair.alpha(), pair.delta());
    Ok(HuangTerms {
        lhs: time_trap(&lhs_t),
        initial: 4.0 * PI * grid.trapezoid(h[0].iter().map(|x| x * x)),
        gradient: 4.0 * PI * d / a * time_trap(&grad_t),
        coupling: 8.0 * a / d * time_trap(&coup_t),
    })
}

/// Gaussian envelope `|V - v±| + |Θ - θ±| ≤ c₁ δ exp(-c₀x²/(δ(1+t)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub c0: f64,
    pub c1: f64,
}

impl Envelope {
    pub fn bound(&self, delta: f64, x: f64, t: f64) -> f64 {
        self.c1 * delta * (-self.c0 * x * x / (delta * (1.0 + t))).exp()
    }
}

/// Distance of the contact wave from its far-field state on the side of `x`.
pub fn contact_deviation(contact: &ContactWave, x: f64, t: f64) -> f64 {
    let pr = contact.profile();
    let s = contact.eval(x, t);
    let th_far = if x < 0.0 { pr.theta_minus() } else { pr.theta_plus() };
    let v_far = pr.gas_constant() * th_far / pr.p_plus();
    (s.v - v_far).abs() + (s.theta - th_far).abs()
}

/// Fits `(c₀, c₁)` on the sample points `xs` at `t = 0`. `c₀` is half the
/// smallest observed Gaussian rate; `c₁` is then the smallest constant that
/// covers every sample, enlarged by 1%.
pub fn fit_contact_envelope(contact: &ContactWave, delta: f64, xs: &[f64]) -> Result<Envelope> {
    let f0 = contact_deviation(contact, 0.0, 0.0);
    if !(f0 > 0.0) {
        return Err(Error::Degenerate("contact wave has zero strength".into()));
    }
    let rate = xs
        .iter()
        .filter(|&&x| x != 0.0)
        .filter_map(|&x| {
            let f = contact_deviation(contact, x, 0.0);
            (f > 1e-12 && f < f0).then(|| delta * (f0 / f).ln() / (x * x))
        })
        .fold(f64::INFINITY, f64::min);
    if !rate.is_finite() {
        return Err(Error::Degenerate("no usable envelope samples".into()));
    }
    let c0 = 0.5 * rate;
    let c1 = xs
        .iter()
        .chain(std::iter::once(&0.0))
        .map(|&x| contact_deviation(contact, x, 0.0) * (c0 * x * x / delta).exp() / delta)
        .fold(0.0, f64::max);
    Ok(Envelope { c0, c1: 1.01 * c1 })
}

/// `max_x (deviation - bound)` over `xs` at time `t`; nonpositive when the
/// envelope holds.
pub fn envelope_excess(contact: &ContactWave, env: &Envelope, delta: f64, xs: &[f64], t: f64) -> f64 {
    xs.iter()
        .map(|&x| contact_deviation(contact, x, t) - env.bound(delta, x, t))
        .fold(f64::NEG_INFINITY, f64::max)
}
