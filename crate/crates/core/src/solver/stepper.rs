//! Classical RK4 time stepping with a diffusive step-size rule and a
//! halving ladder on positivity failures.

use super::boundary::Boundary;
use super::rhs::RhsWork;
use super::{check_positive_fields, State};
use crate::error::{check_len, Error, Result};
use crate::grid::Grid;
use crate::model::{CoefficientModel, ThermoParams};

/// Bounds on `v` and `θ`; leaving them aborts a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleBox {
    pub v_min: f64,
    pub v_max: f64,
    pub theta_min: f64,
    pub theta_max: f64,
}

impl AdmissibleBox {
    pub fn check(&self, state: &State) -> Result<()> {
        let (vlo, vhi) = min_max(&state.v);
        let (tlo, thi) = min_max(&state.theta);
        if vlo < self.v_min || vhi > self.v_max {
            return Err(Error::OutOfBounds {
                t: state.t,
                what: format!("v in [{vlo:.6}, {vhi:.6}] outside [{}, {}]", self.v_min, self.v_max),
            });
        }
        if tlo < self.theta_min || thi > self.theta_max {
            return Err(Error::OutOfBounds {
                t: state.t,
                what: format!(
                    "theta in [{tlo:.6}, {thi:.6}] outside [{}, {}]",
                    self.theta_min, self.theta_max
                ),
            });
        }
        Ok(())
    }
}

pub(crate) fn min_max(f: &[f64]) -> (f64, f64) {
    f.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverSettings {
    /// Step-size coefficient `c` in `dt = c dx² / D_max`, in `(0, 1]`.
    pub cfl: f64,
    pub t_final: f64,
    /// Times at which the sink is called, besides the start and `t_final`.
    /// The stepper lands on each of them exactly.
    pub record_times: Vec<f64>,
    pub bounds: Option<AdmissibleBox>,
    pub max_halvings: usize,
}

impl SolverSettings {
    pub fn new(t_final: f64) -> Self {
        Self {
            cfl: 0.1,
            t_final,
            record_times: Vec::new(),
            bounds: None,
            max_halvings: 10,
        }
    }

    /// Records every `interval` time units up to `t_final`.
    pub fn with_cadence(mut self, interval: f64) -> Self {
        if interval > 0.0 {
            let k = (self.t_final / interval).floor() as usize;
            self.record_times = (1..=k).map(|j| j as f64 * interval).collect();
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::InvalidParameter(format!("cfl coefficient must be in (0, 1], got {}", self.cfl)));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(Error::InvalidParameter(format!("t_final must be >= 0, got {}", self.t_final)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunStats {
    pub steps: usize,
    pub retries: usize,
    pub t: f64,
}

type Triple = [Vec<f64>; 3];

fn triple(n: usize) -> Triple {
    [vec![0.0; n], vec![0.0; n], vec![0.0; n]]
}

pub struct Solver {
    grid: Grid,
    thermo: ThermoParams,
    coeff: CoefficientModel,
    boundary: Box<dyn Boundary>,
    work: RhsWork,
    k: [Triple; 4],
    tmp: Triple,
    next: Triple,
}

impl Solver {
    pub fn new(
        grid: Grid,
        thermo: ThermoParams,
        coeff: CoefficientModel,
        boundary: Box<dyn Boundary>,
    ) -> Self {
        let n = grid.len();
        Self {
            grid,
            thermo,
            coeff,
            boundary,
            work: RhsWork::new(n),
            k: [triple(n), triple(n), triple(n), triple(n)],
            tmp: triple(n),
            next: triple(n),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn thermo(&self) -> &ThermoParams {
        &self.thermo
    }

    pub fn coefficients(&self) -> &CoefficientModel {
        &self.coeff
    }

    /// `(v_t, u_t, θ_t)` with boundary rows taken from the boundary data.
    pub fn rhs(&mut self, state: &State) -> Result<Triple> {
        check_len(self.grid.len(), state.len())?;
        self.eval_k1(state)?;
        Ok(self.k[0].clone())
    }

    fn eval_k1(&mut self, state: &State) -> Result<()> {
        let [a, b, c] = &mut self.k[0];
        self.work.eval(
            &self.grid,
            &self.thermo,
            &self.coeff,
            self.boundary.as_ref(),
            state.t,
            [&state.v, &state.u, &state.theta],
            [a, b, c],
        )
    }

    fn nominal_dt(&self, cfl: f64) -> f64 {
        let dx = self.grid.dx();
        let mut dt = f64::INFINITY;
        if self.work.d_max > 0.0 {
            dt = cfl * dx * dx / self.work.d_max;
        }
        if self.work.c_max > 0.0 {
            dt = dt.min(cfl * dx / self.work.c_max);
        }
        dt
    }

    /// Largest step allowed at `state` for step-size coefficient `cfl`.
    pub fn stable_dt(&mut self, state: &State, cfl: f64) -> Result<f64> {
        self.eval_k1(state)?;
        Ok(self.nominal_dt(cfl))
    }

    /// One RK4 step of size `dt`.
    pub fn step(&mut self, state: &mut State, dt: f64) -> Result<()> {
        check_len(self.grid.len(), state.len())?;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter(format!("time step must be > 0, got {dt}")));
        }
        self.eval_k1(state)?;
        self.rk4_from_k1(state, dt)?;
        self.accept(state, state.t + dt);
        Ok(())
    }

    fn accept(&mut self, state: &mut State, t: f64) {
        std::mem::swap(&mut state.v, &mut self.next[0]);
        std::mem::swap(&mut state.u, &mut self.next[1]);
        std::mem::swap(&mut state.theta, &mut self.next[2]);
        state.t = t;
    }

    /// Stages 2-4 and the update into `self.next`; `k[0]` must hold `f(t, y)`.
    fn rk4_from_k1(&mut self, state: &State, dt: f64) -> Result<()> {
        let n = self.grid.len();
        let t = state.t;
        let y = [&state.v, &state.u, &state.theta];
        for (stage, c) in [0.5, 0.5, 1.0].into_iter().enumerate() {
            for f in 0..3 {
                let kf = &self.k[stage][f];
                for i in 0..n {
                    self.tmp[f][i] = y[f][i] + c * dt * kf[i];
                }
            }
            let [a, b, d] = &mut self.k[stage + 1];
            self.work.eval(
                &self.grid,
                &self.thermo,
                &self.coeff,
                self.boundary.as_ref(),
                t + c * dt,
                [&self.tmp[0], &self.tmp[1], &self.tmp[2]],
                [a, b, d],
            )?;
        }
        let w = dt / 6.0;
        for f in 0..3 {
            let [k1, k2, k3, k4] = [&self.k[0][f], &self.k[1][f], &self.k[2][f], &self.k[3][f]];
            for i in 0..n {
                self.next[f][i] = y[f][i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        let l = self.grid.half_width();
        let (sl, _) = self.boundary.eval(-l, t + dt)?;
        let (sr, _) = self.boundary.eval(l, t + dt)?;
        for f in 0..3 {
            self.next[f][0] = sl[f];
            self.next[f][n - 1] = sr[f];
        }
        check_positive_fields(t + dt, &self.next[0], &self.next[2])
    }

    /// Advances `state` to `settings.t_final`, calling `sink` at the start,
    /// at every record time and at the end.
    pub fn run(
        &mut self,
        state: &mut State,
        settings: &SolverSettings,
        sink: &mut dyn FnMut(&State) -> Result<()>,
    ) -> Result<RunStats> {
        settings.validate()?;
        check_len(self.grid.len(), state.len())?;
        state.check_positive()?;
        if let Some(b) = &settings.bounds {
            b.check(state)?;
        }
        let mut events: Vec<f64> = settings
            .record_times
            .iter()
            .copied()
            .filter(|&s| s > state.t && s < settings.t_final)
            .collect();
        events.sort_by(f64::total_cmp);
        events.dedup();
        if settings.t_final > state.t {
            events.push(settings.t_final);
        }

        let mut stats = RunStats {
            t: state.t,
            ..RunStats::default()
        };
        sink(state)?;
        for &target in &events {
            while state.t < target {
                self.eval_k1(state)?;
                let mut dt = self.nominal_dt(settings.cfl);
                let mut land = false;
                if state.t + dt >= target - 1e-12 * target.abs().max(1.0) {
                    dt = target - state.t;
                    land = true;
                }
                let mut halvings = 0;
                loop {
                    match self.rk4_from_k1(state, dt) {
                        Ok(()) => break,
                        Err(Error::Positivity { .. }) => {
                            if halvings == settings.max_halvings {
                                return Err(Error::BlowUp {
                                    t: state.t,
                                    halvings,
                                });
                            }
                            halvings += 1;
                            stats.retries += 1;
                            dt *= 0.5;
                            land = false;
                        }
                        Err(e) => return Err(e),
                    }
                }
                let t_new = if land { target } else { state.t + dt };
                self.accept(state, t_new);
                stats.steps += 1;
                if let Some(b) = &settings.bounds {
                    b.check(state)?;
                }
            }
            sink(state)?;
        }
        stats.t = state.t;
        Ok(stats)
    }
}
