//! Scenario execution and file output.
//!
//! Every run writes `meta.txt` (flat `key = value` lines). Time-dependent
//! scenarios add `diagnostics.csv` and `profile_tNNN.csv` snapshots, where
//! `NNN` is the index of the snapshot time in `output.profile_times`.

use std::fmt::Display;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use nsk_core::diagnostics::{
    capillary_defect, contact_deviation, decay_report, energy_inequality_ratio, envelope_excess, fit_contact_envelope,
    fit_decay, DiagnosticsRecord, Probe,
};
use nsk_core::model::CoefficientModel;
use nsk_core::solver::{AnsatzBoundary, RunStats, Solver, SolverSettings, State};
use nsk_core::waves::{CompositeWave, WaveMode};
use nsk_core::Grid;

use crate::config::{RunConfig, ScenarioKind};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Core(#[from] nsk_core::Error),
    #[error("{0}")]
    Config(#[from] crate::config::ConfigError),
}

/// Result of a scenario that got as far as writing its artifacts.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// Completed without abort and, for checking scenarios, every check passed.
    pub success: bool,
    /// Abort reason or failed checks.
    pub reason: Option<String>,
    pub meta: Vec<(String, String)>,
}

#[derive(Default)]
struct Meta(Vec<(String, String)>);

impl Meta {
    fn put(&mut self, key: &str, value: impl Display) {
        self.0.push((key.to_string(), value.to_string()));
    }

    fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut f = BufWriter::new(File::create(path)?);
        for (k, v) in &self.0 {
            writeln!(f, "{k} = {v}")?;
        }
        f.flush()
    }
}

pub fn run_scenario(cfg: &RunConfig, out: &Path) -> Result<RunOutcome, RunError> {
    cfg.validate()?;
    std::fs::create_dir_all(out)?;
    let mut meta = Meta::default();
    for (k, v) in cfg.resolved() {
        meta.put(&k, v);
    }
    let result = match cfg.scenario.kind {
        ScenarioKind::ProfileValidation => profile_validation(cfg, out, &mut meta),
        ScenarioKind::Convergence => convergence(cfg, out, &mut meta),
        _ => time_dependent(cfg, out, &mut meta),
    };
    let outcome = match result {
        Ok(failures) => {
            let success = failures.is_empty();
            meta.put("status", if success { "ok" } else { "failed" });
            let reason = (!success).then(|| failures.join("; "));
            if let Some(r) = &reason {
                meta.put("reason", r);
            }
            RunOutcome {
                success,
                reason,
                meta: meta.0.clone(),
            }
        }
        Err(RunError::Core(e)) => {
            meta.put("status", "aborted");
            meta.put("reason", &e);
            RunOutcome {
                success: false,
                reason: Some(e.to_string()),
                meta: meta.0.clone(),
            }
        }
        Err(e) => return Err(e),
    };
    meta.write(&out.join("meta.txt"))?;
    Ok(outcome)
}

fn build_wave(cfg: &RunConfig) -> Result<CompositeWave, RunError> {
    Ok(CompositeWave::new(
        &cfg.thermo()?,
        &cfg.coefficients(),
        &cfg.end_states(),
        cfg.wave_mode(),
        cfg.scenario.xi_half_width,
        cfg.scenario.profile_nodes,
    )?)
}

fn initial_state(cfg: &RunConfig, wave: &CompositeWave, grid: &Grid) -> Result<State, RunError> {
    let delta = wave.thermo().delta();
    let base = wave.sample(grid, 0.0)?;
    let n = grid.len();
    let (mut v, mut u, mut th) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for (i, p) in base.iter().enumerate() {
        let [a, b, c] = cfg.perturbation.eval(grid.x(i), delta);
        v.push(p.v + a);
        u.push(p.u + b);
        th.push(p.theta + c);
    }
    Ok(State::new(0.0, v, u, th)?)
}

fn settings(cfg: &RunConfig, extra_times: &[f64]) -> SolverSettings {
    let s = &cfg.solver;
    let mut st = SolverSettings::new(s.t_final).with_cadence(s.cadence);
    st.cfl = s.cfl;
    st.max_halvings = s.max_halvings;
    st.record_times.extend_from_slice(extra_times);
    if s.v_min.is_some() || s.v_max.is_some() || s.theta_min.is_some() || s.theta_max.is_some() {
        st.bounds = Some(s.bounds());
    }
    st
}

fn put_stats(meta: &mut Meta, stats: &RunStats) {
    meta.put("run.steps", stats.steps);
    meta.put("run.retries", stats.retries);
    meta.put("run.t", stats.t);
}

fn write_snapshot(path: &Path, grid: &Grid, st: &State, wave: &CompositeWave) -> Result<(), RunError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "v", "u", "theta", "V", "U", "Theta"])?;
    for (i, p) in wave.sample(grid, st.t)?.iter().enumerate() {
        let row = [grid.x(i), st.v[i], st.u[i], st.theta[i], p.v, p.u, p.theta];
        w.write_record(row.iter().map(|x| x.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Contact, composite and rarefaction runs. Returns the failed checks (none
/// for these scenarios); solver aborts come back as `RunError::Core`.
fn time_dependent(cfg: &RunConfig, out: &Path, meta: &mut Meta) -> Result<Vec<String>, RunError> {
    let wave = build_wave(cfg)?;
    let grid = Grid::new(cfg.grid.half_width, cfg.grid.n_points)?;
    let mut state = initial_state(cfg, &wave, &grid)?;
    let m = wave.middle();
    meta.put("middle.v_minus", m.v_minus);
    meta.put("middle.theta_minus", m.theta_minus);
    meta.put("middle.v_plus", m.v_plus);
    meta.put("middle.theta_plus", m.theta_plus);
    meta.put("middle.u", m.u);
    meta.put("middle.p", m.p);

    let profile_times = &cfg.output.profile_times;
    for (k, t) in profile_times.iter().enumerate() {
        meta.put(&format!("profile.t{k:03}"), t);
    }
    let st = settings(cfg, profile_times);
    let cadence_ticks = SolverSettings::new(st.t_final).with_cadence(cfg.solver.cadence).record_times;

    let mut solver = Solver::new(
        grid,
        *wave.thermo(),
        *wave.coefficients(),
        Box::new(AnsatzBoundary::new(wave.clone())),
    );
    let mut probe = Probe::new(&wave, grid);
    let mut csv_out = csv::Writer::from_path(out.join("diagnostics.csv"))?;
    csv_out.write_record(DiagnosticsRecord::COLUMNS)?;
    let mut records = Vec::new();
    let mut capillary = Vec::new();
    let mut io_error: Option<RunError> = None;
    let t_final = st.t_final;

    let run = solver.run(&mut state, &st, &mut |s| {
        let fail = |e: RunError, slot: &mut Option<RunError>| {
            *slot = Some(e);
            nsk_core::Error::Degenerate("output failure".into())
        };
        for (k, _) in profile_times.iter().enumerate().filter(|(_, &t)| t == s.t) {
            let path = out.join(format!("profile_t{k:03}.csv"));
            if let Err(e) = write_snapshot(&path, &grid, s, &wave) {
                return Err(fail(e, &mut io_error));
            }
        }
        if s.t == 0.0 || s.t == t_final || cadence_ticks.contains(&s.t) {
            let rec = probe.record(s)?;
            if let Some(bad) = rec.values().iter().position(|x| !x.is_finite()) {
                return Err(nsk_core::Error::Domain(format!(
                    "non-finite {} at t = {}",
                    DiagnosticsRecord::COLUMNS[bad],
                    s.t
                )));
            }
            if let Err(e) = csv_out.write_record(rec.values().iter().map(|x| x.to_string())) {
                return Err(fail(e.into(), &mut io_error));
            }
            records.push(rec);
            let (k_x, e) = capillary_defect(&wave, &grid, s.t)?;
            capillary.push(grid.l1_norm(&k_x)? + grid.l1_norm(&e)?);
        }
        Ok(())
    });
    csv_out.flush()?;
    if let Some(e) = io_error {
        return Err(e);
    }
    summarize(&records, meta);
    write_forcing(&out.join("forcing.csv"), &records, &capillary, meta)?;
    let stats = run?;
    put_stats(meta, &stats);
    Ok(Vec::new())
}

/// Fitted decay constants and energy bookkeeping over the recorded series.
fn summarize(records: &[DiagnosticsRecord], meta: &mut Meta) {
    meta.put("records", records.len());
    if let Ok(rep) = decay_report(records, 0.0) {
        meta.put("decay.sup_ratio", rep.ratio);
        meta.put("bounds.v_min", rep.v_min);
        meta.put("bounds.v_max", rep.v_max);
        meta.put("bounds.theta_min", rep.theta_min);
        meta.put("bounds.theta_max", rep.theta_max);
    }
    let late: Vec<&DiagnosticsRecord> = records.iter().filter(|r| r.t >= 1.0).collect();
    let t: Vec<f64> = late.iter().map(|r| r.t).collect();
    let y: Vec<f64> = late.iter().map(|r| r.sup_perturbation()).collect();
    if let Ok(fit) = fit_decay(&t, &y) {
        meta.put("decay.slope", fit.slope);
        meta.put("decay.amplitude", fit.amplitude());
        meta.put("decay.fit_residual", fit.residual);
    }
    if let Ok(r) = energy_inequality_ratio(records) {
        meta.put("energy.inequality_ratio", r);
    }
    if let Some(r) = records.last() {
        meta.put("residual.gh_l1_final", r.gh_l1);
    }
}

/// Cumulative ansatz-defect forcing `∫₀ᵗ (‖(G,H)‖_{L¹} + ‖(K_x, F)‖_{L¹}) dτ`
/// per record, by the trapezoid rule.
fn write_forcing(path: &Path, records: &[DiagnosticsRecord], capillary: &[f64], meta: &mut Meta) -> Result<(), RunError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "gh_l1", "capillary_l1", "forcing"])?;
    let (mut gh, mut cap) = (0.0, 0.0);
    for (i, (r, c)) in records.iter().zip(capillary).enumerate() {
        if i > 0 {
            let dt = r.t - records[i - 1].t;
            gh += 0.5 * dt * (records[i - 1].gh_l1 + r.gh_l1);
            cap += 0.5 * dt * (capillary[i - 1] + c);
        }
        w.write_record([r.t, r.gh_l1, *c, gh + cap].iter().map(|x| x.to_string()))?;
    }
    w.flush()?;
    meta.put("residual.forcing", gh + cap);
    meta.put("residual.gh_forcing", gh);
    meta.put("residual.capillary_forcing", cap);
    Ok(())
}

/// Nested refinement `N, 2N-1, 4N-3` with differences on the coarse nodes.
fn convergence(cfg: &RunConfig, out: &Path, meta: &mut Meta) -> Result<Vec<String>, RunError> {
    let wave = build_wave(cfg)?;
    let n0 = cfg.grid.n_points;
    let sizes = [n0, 2 * n0 - 1, 4 * n0 - 3];
    let mut finals = Vec::new();
    for &n in &sizes {
        let grid = Grid::new(cfg.grid.half_width, n)?;
        let mut state = initial_state(cfg, &wave, &grid)?;
        let mut solver = Solver::new(
            grid,
            *wave.thermo(),
            *wave.coefficients(),
            Box::new(AnsatzBoundary::new(wave.clone())),
        );
        let mut st = settings(cfg, &[]);
        st.record_times.clear();
        let stats = solver.run(&mut state, &st, &mut |_| Ok(()))?;
        meta.put(&format!("convergence.n{n}.steps"), stats.steps);
        finals.push(state);
    }
    let diff = |a: &State, b: &State| {
        let f = |x: &[f64], y: &[f64]| x.iter().enumerate().map(|(i, v)| (v - y[2 * i]).abs()).fold(0.0, f64::max);
        f(&a.v, &b.v).max(f(&a.u, &b.u)).max(f(&a.theta, &b.theta))
    };
    let e1 = diff(&finals[0], &finals[1]);
    let e2 = diff(&finals[1], &finals[2]);
    let order = (e1 / e2).log2();
    let mut w = csv::Writer::from_path(out.join("convergence.csv"))?;
    w.write_record(["n_points", "dx", "diff_to_next"])?;
    for (k, &n) in sizes.iter().take(2).enumerate() {
        let dx = 2.0 * cfg.grid.half_width / (n - 1) as f64;
        w.write_record([n.to_string(), dx.to_string(), [e1, e2][k].to_string()])?;
    }
    w.flush()?;
    meta.put("convergence.diff_coarse", e1);
    meta.put("convergence.diff_fine", e2);
    meta.put("convergence.observed_order", order);
    Ok(Vec::new())
}

/// `α0` when `α̂(Θ) = α0 Θ`, where the profile equation is the linear heat
/// equation with diffusivity `a α0`.
fn linear_heat_alpha(coeff: &CoefficientModel) -> Option<f64> {
    match *coeff {
        CoefficientModel::Default { alpha0, .. } | CoefficientModel::PowerLaw { alpha0, .. } => Some(alpha0),
        CoefficientModel::Constant { .. } => None,
    }
}

fn profile_validation(cfg: &RunConfig, out: &Path, meta: &mut Meta) -> Result<Vec<String>, RunError> {
    let wave = build_wave(cfg)?;
    debug_assert_eq!(wave.mode(), WaveMode::ContactOnly);
    let contact = wave.contact();
    let profile = contact.profile();
    let delta = wave.thermo().delta();
    let mut failures = Vec::new();
    let mut check = |ok: bool, name: &str| {
        if !ok {
            failures.push(name.to_string());
        }
    };

    let res = profile.ode_residual();
    meta.put("profile.nodes", profile.xi().len());
    meta.put("profile.half_width", profile.half_width());
    meta.put("profile.newton_iterations", profile.newton_iterations());
    meta.put("profile.ode_residual", res);
    check(res < 1e-8, "ode residual");

    let th = profile.theta();
    let (tm, tp) = (profile.theta_minus(), profile.theta_plus());
    let end_err = (th[0] - tm).abs().max((th[th.len() - 1] - tp).abs());
    meta.put("profile.end_error", end_err);
    check(end_err < 1e-8, "end values");
    let monotone = th.windows(2).all(|w| if tp >= tm { w[1] >= w[0] } else { w[1] <= w[0] });
    meta.put("profile.monotone", monotone);
    check(monotone, "monotone");

    if let Some(alpha0) = linear_heat_alpha(wave.coefficients()) {
        let scale = 2.0 * (profile.a() * alpha0).sqrt();
        let err = profile
            .xi()
            .iter()
            .zip(th)
            .map(|(&xi, &t)| (t - (tm + 0.5 * (tp - tm) * (1.0 + libm::erf(xi / scale)))).abs())
            .fold(0.0, f64::max);
        meta.put("profile.erf_oracle_error", err);
        check(err < 1e-6, "erf oracle");
    }

    let xs: Vec<f64> = (0..=1200).map(|i| -60.0 + 0.1 * i as f64).collect();
    let mut mass: f64 = 0.0;
    for &t in &[0.0, 1.0, 10.0, 100.0] {
        for &x in &xs {
            let s = contact.eval(x, t);
            mass = mass.max((s.v_t - s.u_x).abs());
        }
    }
    meta.put("contact.mass_identity", mass);
    check(mass < 1e-8, "V_t = U_x");

    if contact_deviation(contact, 0.0, 0.0) > 0.0 {
        let env = fit_contact_envelope(contact, delta, &xs)?;
        meta.put("envelope.c0", env.c0);
        meta.put("envelope.c1", env.c1);
        for &t in &[1.0, 10.0, 100.0] {
            let excess = envelope_excess(contact, &env, delta, &xs, t);
            meta.put(&format!("envelope.excess_t{t}"), excess);
            check(excess <= 0.0, &format!("envelope at t = {t}"));
        }
    }

    let mut w = csv::Writer::from_path(out.join("contact_profile.csv"))?;
    w.write_record(["x", "V", "U", "Theta", "V_x", "U_x", "Theta_x"])?;
    let grid = Grid::new(cfg.grid.half_width, cfg.grid.n_points)?;
    for x in grid.nodes() {
        let s = contact.eval(x, 0.0);
        let row = [x, s.v, s.u, s.theta, s.v_x, s.u_x, s.theta_x];
        w.write_record(row.iter().map(|x| x.to_string()))?;
    }
    w.flush()?;
    Ok(failures)
}
