//! Superposition of the 1-rarefaction, the viscous contact wave and the
//! 3-rarefaction, minus the shared middle states.

use super::contact::ContactWave;
use super::rarefaction::RarefactionWave;
use super::riemann::{solve_middle_states, EndStates, MiddleStates};
use super::selfsimilar::solve_selfsimilar;
use super::{WaveFields, WaveState};
use crate::error::Result;
use crate::grid::Grid;
use crate::model::{CoefficientModel, Family, ThermoParams};

/// Which pieces of the composite are evaluated.
///
/// `ContactOnly` builds the contact wave directly from the end states with
/// `u₋` as the velocity anchor. The other modes go through the middle states
/// and anchor the contact velocity at `u^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveMode {
    ContactOnly,
    RarefactionMinus,
    RarefactionPlus,
    Full,
}

impl WaveMode {
    pub fn name(self) -> &'static str {
        match self {
            WaveMode::ContactOnly => "contact-only",
            WaveMode::RarefactionMinus => "rarefaction-minus",
            WaveMode::RarefactionPlus => "rarefaction-plus",
            WaveMode::Full => "full",
        }
    }
}

/// The three pieces at one point; absent pieces are `None` in the active mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Components {
    pub minus: Option<WaveState>,
    pub contact: Option<WaveState>,
    pub plus: Option<WaveState>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositeWave {
    thermo: ThermoParams,
    coeff: CoefficientModel,
    ends: EndStates,
    middle: MiddleStates,
    contact: ContactWave,
    minus: RarefactionWave,
    plus: RarefactionWave,
    mode: WaveMode,
}

impl CompositeWave {
    /// Builds every piece. `xi_half_width` and `profile_nodes` configure the
    /// self-similar profile solve (`None` picks the default truncation).
    pub fn new(
        thermo: &ThermoParams,
        coeff: &CoefficientModel,
        ends: &EndStates,
        mode: WaveMode,
        xi_half_width: Option<f64>,
        profile_nodes: usize,
    ) -> Result<Self> {
        ends.validate()?;
        let middle = match mode {
            WaveMode::ContactOnly => MiddleStates {
                v_minus: ends.v_minus,
                theta_minus: ends.theta_minus,
                v_plus: ends.v_plus,
                theta_plus: ends.theta_plus,
                u: ends.u_minus,
                p: thermo.pressure(ends.v_plus, ends.theta_plus)?,
                s_minus: thermo.entropy(ends.v_minus, ends.theta_minus)?,
                s_plus: thermo.entropy(ends.v_plus, ends.theta_plus)?,
            },
            _ => solve_middle_states(ends, thermo)?,
        };
        let profile = solve_selfsimilar(
            middle.theta_minus,
            middle.theta_plus,
            middle.p,
            thermo,
            coeff,
            xi_half_width,
            profile_nodes,
        )?;
        let contact = ContactWave::new(profile, thermo, middle.u);
        let minus = RarefactionWave::new(thermo, Family::Minus, ends.minus(), middle.v_minus)?;
        let plus = RarefactionWave::new(thermo, Family::Plus, ends.plus(), middle.v_plus)?;
        Ok(Self {
            thermo: *thermo,
            coeff: *coeff,
            ends: *ends,
            middle,
            contact,
            minus,
            plus,
            mode,
        })
    }

    pub fn mode(&self) -> WaveMode {
        self.mode
    }

    pub fn ends(&self) -> &EndStates {
        &self.ends
    }

    pub fn middle(&self) -> &MiddleStates {
        &self.middle
    }

    pub fn contact(&self) -> &ContactWave {
        &self.contact
    }

    pub fn rarefaction(&self, family: Family) -> &RarefactionWave {
        match family {
            Family::Minus => &self.minus,
            Family::Plus => &self.plus,
        }
    }

    pub fn thermo(&self) -> &ThermoParams {
        &self.thermo
    }

    pub fn coefficients(&self) -> &CoefficientModel {
        &self.coeff
    }

    /// Far-field states `(left, right)` of the evaluated wave.
    pub fn far_field(&self) -> ([f64; 3], [f64; 3]) {
        let m = &self.middle;
        match self.mode {
            WaveMode::ContactOnly => (m.minus(), m.plus()),
            WaveMode::RarefactionMinus => (self.ends.minus(), m.minus()),
            WaveMode::RarefactionPlus => (m.plus(), self.ends.plus()),
            WaveMode::Full => (self.ends.minus(), self.ends.plus()),
        }
    }

    pub fn components(&self, x: f64, t: f64) -> Result<Components> {
        let (mi, c, pl) = match self.mode {
            WaveMode::ContactOnly => (false, true, false),
            WaveMode::RarefactionMinus => (true, false, false),
            WaveMode::RarefactionPlus => (false, false, true),
            WaveMode::Full => (true, true, true),
        };
        Ok(Components {
            minus: if mi { Some(self.minus.eval(x, t)?) } else { None },
            contact: if c { Some(self.contact.eval(x, t)) } else { None },
            plus: if pl { Some(self.plus.eval(x, t)?) } else { None },
        })
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<WaveState> {
        let c = self.components(x, t)?;
        Ok(match (c.minus, c.contact, c.plus) {
            (Some(a), Some(b), Some(d)) => {
                let m = &self.middle;
                let [v, u, th] = m.minus();
                let left = WaveState::constant(v, u, th);
                let [v, u, th] = m.plus();
                let right = WaveState::constant(v, u, th);
                (a - left) + b + (d - right)
            }
            (Some(a), None, None) | (None, Some(a), None) | (None, None, Some(a)) => a,
            _ => unreachable!("mode selects one or all three pieces"),
        })
    }

    /// The wave at every grid node.
    pub fn sample(&self, grid: &Grid, t: f64) -> Result<Vec<WaveState>> {
        (0..grid.len()).map(|i| self.eval(grid.x(i), t)).collect()
    }

    pub fn fields(&self, grid: &Grid, t: f64) -> Result<WaveFields> {
        Ok(self.sample(grid, t)?.into_iter().collect())
    }
}
