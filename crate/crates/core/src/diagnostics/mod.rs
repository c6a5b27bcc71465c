//! Measurable quantities along a run: perturbation norms, energy and
//! dissipation, Kanel functionals, heat-kernel weights, ansatz residuals and
//! decay fits.

mod energy;
mod estimates;
mod fit;
mod heat_kernel;
mod residuals;

pub use energy::{
    basic_energy, capillary_energy, dissipation, kanel_functionals, kanel_phi_bar, kanel_psi,
    KanelReport, PerturbationFields,
};
pub use estimates::{
    contact_deviation, envelope_excess, fit_contact_envelope, huang_estimate_terms, Envelope, HuangTerms,
};
pub use fit::{fit_decay, DecayFit};
pub use heat_kernel::HeatKernelPair;
pub use residuals::{
    capillary_defect, composite_residuals, composite_residuals_at, contact_residuals, contact_residuals_at,
    CompositeResiduals,
};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::solver::State;
use crate::waves::{CompositeWave, WaveMode};

/// One row of the diagnostics time series.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub sup_phi: f64,
    pub sup_psi: f64,
    pub sup_zeta: f64,
    pub l2_phi: f64,
    pub l2_psi: f64,
    pub l2_zeta: f64,
    pub l2_phi_x: f64,
    pub l2_psi_x: f64,
    pub l2_zeta_x: f64,
    pub energy: f64,
    pub dissipation: f64,
    pub capillary_energy: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub theta_min: f64,
    pub theta_max: f64,
    pub mass_drift: f64,
    pub r1_sup: f64,
    pub r2_sup: f64,
    pub gh_l1: f64,
}

impl DiagnosticsRecord {
    pub const COLUMNS: [&'static str; 21] = [
        "t",
        "sup_phi",
        "sup_psi",
        "sup_zeta",
        "l2_phi",
        "l2_psi",
        "l2_zeta",
        "l2_phi_x",
        "l2_psi_x",
        "l2_zeta_x",
        "energy",
        "dissipation",
        "capillary_energy",
        "v_min",
        "v_max",
        "theta_min",
        "theta_max",
        "mass_drift",
        "r1_sup",
        "r2_sup",
        "gh_l1",
    ];

    /// Values in [`COLUMNS`](Self::COLUMNS) order.
    pub fn values(&self) -> [f64; 21] {
        [
            self.t,
            self.sup_phi,
            self.sup_psi,
            self.sup_zeta,
            self.l2_phi,
            self.l2_psi,
            self.l2_zeta,
            self.l2_phi_x,
            self.l2_psi_x,
            self.l2_zeta_x,
            self.energy,
            self.dissipation,
            self.capillary_energy,
            self.v_min,
            self.v_max,
            self.theta_min,
            self.theta_max,
            self.mass_drift,
            self.r1_sup,
            self.r2_sup,
            self.gh_l1,
        ]
    }

    /// `sup |(φ, ψ, ζ)|`.
    pub fn sup_perturbation(&self) -> f64 {
        self.sup_phi.max(self.sup_psi).max(self.sup_zeta)
    }
}

/// Computes [`DiagnosticsRecord`]s for states compared against a wave ansatz.
/// The first recorded state fixes the reference for the mass drift.
#[derive(Debug, Clone)]
pub struct Probe<'a> {
    wave: &'a CompositeWave,
    grid: Grid,
    mass0: Option<f64>,
}

impl<'a> Probe<'a> {
    pub fn new(wave: &'a CompositeWave, grid: Grid) -> Self {
        Self {
            wave,
            grid,
            mass0: None,
        }
    }

    pub fn record(&mut self, state: &State) -> Result<DiagnosticsRecord> {
        let g = &self.grid;
        let t = state.t;
        let fields = self.wave.fields(g, t)?;
        let p = PerturbationFields::new(state, &fields)?;
        let thermo = self.wave.thermo();
        let coeff = self.wave.coefficients();
        let mass = g.integrate(&p.phi)?;
        let mass0 = *self.mass0.get_or_insert(mass);
        let (r1_sup, r2_sup) = if matches!(self.wave.mode(), WaveMode::ContactOnly | WaveMode::Full) {
            let (r1, r2) = contact_residuals(self.wave.contact(), coeff, g, t);
            (g.sup_norm(&r1)?, g.sup_norm(&r2)?)
        } else {
            (0.0, 0.0)
        };
        let (v_min, v_max) = crate::solver::min_max(&state.v);
        let (theta_min, theta_max) = crate::solver::min_max(&state.theta);
        Ok(DiagnosticsRecord {
            t,
            sup_phi: g.sup_norm(&p.phi)?,
            sup_psi: g.sup_norm(&p.psi)?,
            sup_zeta: g.sup_norm(&p.zeta)?,
            l2_phi: g.l2_norm(&p.phi)?,
            l2_psi: g.l2_norm(&p.psi)?,
            l2_zeta: g.l2_norm(&p.zeta)?,
            l2_phi_x: g.l2_norm(&g.d1(&p.phi)?)?,
            l2_psi_x: g.l2_norm(&g.d1(&p.psi)?)?,
            l2_zeta_x: g.l2_norm(&g.d1(&p.zeta)?)?,
            energy: basic_energy(state, &fields, thermo, coeff, g)?,
            dissipation: dissipation(state, &fields, coeff, g)?,
            capillary_energy: capillary_energy(state, coeff, g)?,
            v_min,
            v_max,
            theta_min,
            theta_max,
            mass_drift: mass - mass0,
            r1_sup,
            r2_sup,
            gh_l1: composite_residuals(self.wave, g, t)?.total_l1(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayReport {
    /// Initial `sup |φ|, sup |ψ|, sup |ζ|`.
    pub initial_sup: [f64; 3],
    pub final_sup: [f64; 3],
    /// Final over initial `sup |(φ, ψ, ζ)|`; zero when both vanish.
    pub ratio: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub theta_min: f64,
    pub theta_max: f64,
    /// `sup |(φ, ψ, ζ)|` never increases after the transient.
    pub sup_monotone: bool,
    /// `E` never increases after the transient.
    pub energy_monotone: bool,
}

pub fn decay_report(records: &[DiagnosticsRecord], transient: f64) -> Result<DecayReport> {
    if records.len() < 2 {
        return Err(Error::Degenerate(format!("need at least 2 records, got {}", records.len())));
    }
    let first = &records[0];
    let last = &records[records.len() - 1];
    let (s0, s1) = (first.sup_perturbation(), last.sup_perturbation());
    let ratio = if s0 > 0.0 {
        s1 / s0
    } else if s1 == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let late: Vec<&DiagnosticsRecord> = records.iter().filter(|r| r.t >= first.t + transient).collect();
    let nonincreasing = |f: fn(&DiagnosticsRecord) -> f64| late.windows(2).all(|w| f(w[1]) <= f(w[0]));
    Ok(DecayReport {
        initial_sup: [first.sup_phi, first.sup_psi, first.sup_zeta],
        final_sup: [last.sup_phi, last.sup_psi, last.sup_zeta],
        ratio,
        v_min: records.iter().map(|r| r.v_min).fold(f64::INFINITY, f64::min),
        v_max: records.iter().map(|r| r.v_max).fold(f64::NEG_INFINITY, f64::max),
        theta_min: records.iter().map(|r| r.theta_min).fold(f64::INFINITY, f64::min),
        theta_max: records.iter().map(|r| r.theta_max).fold(f64::NEG_INFINITY, f64::max),
        sup_monotone: nonincreasing(DiagnosticsRecord::sup_perturbation),
        energy_monotone: nonincreasing(|r| r.energy),
    })
}

/// `max_t (E(t) + ∫₀ᵗ D) / E(0)`, with the time integral by trapezoid over
/// the records.
pub fn energy_inequality_ratio(records: &[DiagnosticsRecord]) -> Result<f64> {
    let e0 = records
        .first()
        .map(|r| r.energy)
        .ok_or_else(|| Error::Degenerate("no records".into()))?;
    if !(e0 > 0.0) {
        return Err(Error::Degenerate(format!("initial energy must be positive, got {e0}")));
    }
    let mut acc = 0.0;
    let mut worst = 1.0_f64;
    for w in records.windows(2) {
        acc += 0.5 * (w[1].t - w[0].t) * (w[0].dissipation + w[1].dissipation);
        worst = worst.max((w[1].energy + acc) / e0);
    }
    Ok(worst)
}
