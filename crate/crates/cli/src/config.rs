//! Run configuration: TOML sections with `key = value` lines.
//!
//! ```toml
//! [thermo]
//! r = 1.0
//! gamma = 1.1
//! a = 1.0
//!
//! [coefficients]
//! model = "default"      # default | constant | power-law
//! mu0 = 1.0
//! kappa0 = 1.0
//! alpha0 = 1.0
//! eps = 0.01
//! k1 = 1.0
//!
//! [end_states]
//! v_minus = 1.0
//! u_minus = 0.0
//! theta_minus = 1.0
//! v_plus = 1.05
//! u_plus = 0.0
//! theta_plus = 1.05
//!
//! [scenario]
//! kind = "contact"       # contact | composite | rarefaction | convergence | profile-validation
//!
//! [grid]
//! half_width = 50.0
//! n_points = 2000
//!
//! [solver]
//! cfl = 0.1
//! t_final = 200.0
//! cadence = 1.0
//!
//! [perturbation]
//! shape = "gaussian"     # gaussian | sine-packet
//! phi = 0.1
//! psi = 0.1
//! zeta = 0.1             # ζ₀ amplitude divided by √(γ-1)
//!
//! [output]
//! dir = "out"
//! profile_times = [0.0, 200.0]
//! ```
//!
//! Every section and key is optional. The values above are the defaults,
//! except `profile_times`, which defaults to empty.

use nsk_core::model::{CoefficientModel, ThermoParams};
use nsk_core::solver::AdmissibleBox;
use nsk_core::waves::{solve_middle_states, EndStates, WaveMode};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl From<nsk_core::Error> for ConfigError {
    fn from(e: nsk_core::Error) -> Self {
        ConfigError::Invalid(e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub thermo: ThermoSection,
    pub coefficients: CoefficientSection,
    pub end_states: EndStateSection,
    pub scenario: ScenarioSection,
    pub grid: GridSection,
    pub solver: SolverSection,
    pub perturbation: PerturbationSection,
    pub output: OutputSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            thermo: ThermoSection::default(),
            coefficients: CoefficientSection::default(),
            end_states: EndStateSection::default(),
            scenario: ScenarioSection::default(),
            grid: GridSection::default(),
            solver: SolverSection::default(),
            perturbation: PerturbationSection::default(),
            output: OutputSection::default(),
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct ThermoSection {
    pub r: f64,
    pub gamma: f64,
    pub a: f64,
}

impl Default for ThermoSection {
    fn default() -> Self {
        Self {
            r: 1.0,
            gamma: 1.1,
            a: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ModelName {
    Default,
    Constant,
    PowerLaw,
}

/// Parameters of every family; only those of the selected `model` are read.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct CoefficientSection {
    pub model: ModelName,
    pub mu0: f64,
    pub kappa0: f64,
    pub alpha0: f64,
    pub eps: f64,
    pub k1: f64,
    pub mu: f64,
    pub kappa: f64,
    pub alpha: f64,
    pub mu_exp: f64,
    pub kappa_exp: f64,
}

impl Default for CoefficientSection {
    fn default() -> Self {
        Self {
            model: ModelName::Default,
            mu0: 1.0,
            kappa0: 1.0,
            alpha0: 1.0,
            eps: 0.01,
            k1: 1.0,
            mu: 1.0,
            kappa: 1.0,
            alpha: 1.0,
            mu_exp: 0.0,
            kappa_exp: 0.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct EndStateSection {
    pub v_minus: f64,
    pub u_minus: f64,
    pub theta_minus: f64,
    pub v_plus: f64,
    pub u_plus: f64,
    pub theta_plus: f64,
}

impl Default for EndStateSection {
    fn default() -> Self {
        Self {
            v_minus: 1.0,
            u_minus: 0.0,
            theta_minus: 1.0,
            v_plus: 1.05,
            u_plus: 0.0,
            theta_plus: 1.05,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    Contact,
    Composite,
    Rarefaction,
    Convergence,
    ProfileValidation,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSection {
    pub kind: ScenarioKind,
    /// Which wave a `rarefaction` scenario follows.
    pub family: FamilyName,
    /// Ansatz used by a `convergence` scenario: `contact` or `composite`.
    pub base: ScenarioKind,
    pub profile_nodes: usize,
    pub xi_half_width: Option<f64>,
}

impl Default for ScenarioSection {
    fn default() -> Self {
        Self {
            kind: ScenarioKind::Contact,
            family: FamilyName::Minus,
            base: ScenarioKind::Contact,
            profile_nodes: 20001,
            xi_half_width: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub half_width: f64,
    pub n_points: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            half_width: 50.0,
            n_points: 2000,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSection {
    pub cfl: f64,
    pub t_final: f64,
    pub cadence: f64,
    pub max_halvings: usize,
    pub v_min: Option<f64>,
    pub v_max: Option<f64>,
    pub theta_min: Option<f64>,
    pub theta_max: Option<f64>,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            cfl: 0.1,
            t_final: 200.0,
            cadence: 1.0,
            max_halvings: 10,
            v_min: None,
            v_max: None,
            theta_min: None,
            theta_max: None,
        }
    }
}

impl SolverSection {
    /// Admissible box; unset sides are unbounded.
    pub fn bounds(&self) -> AdmissibleBox {
        AdmissibleBox {
            v_min: self.v_min.unwrap_or(0.0),
            v_max: self.v_max.unwrap_or(f64::INFINITY),
            theta_min: self.theta_min.unwrap_or(0.0),
            theta_max: self.theta_max.unwrap_or(f64::INFINITY),
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Gaussian,
    SinePacket,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct PerturbationSection {
    pub shape: Shape,
    pub phi: f64,
    pub psi: f64,
    /// Amplitude of `ζ₀/√(γ-1)`.
    pub zeta: f64,
    pub center: f64,
    pub width: f64,
    /// Carrier wavenumber of the sine packet.
    pub wavenumber: f64,
}

impl Default for PerturbationSection {
    fn default() -> Self {
        Self {
            shape: Shape::Gaussian,
            phi: 0.1,
            psi: 0.1,
            zeta: 0.1,
            center: 0.0,
            width: 1.0,
            wavenumber: 2.0,
        }
    }
}

impl PerturbationSection {
    /// `(φ₀, ψ₀, ζ₀)(x)` for `δ = γ - 1`.
    pub fn eval(&self, x: f64, delta: f64) -> [f64; 3] {
        let z = (x - self.center) / self.width;
        let envelope = (-z * z).exp();
        let shape = match self.shape {
            Shape::Gaussian => envelope,
            Shape::SinePacket => envelope * (self.wavenumber * (x - self.center)).sin(),
        };
        [self.phi * shape, self.psi * shape, self.zeta * delta.sqrt() * shape]
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub profile_times: Vec<f64>,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            profile_times: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn thermo(&self) -> Result<ThermoParams, ConfigError> {
        Ok(ThermoParams::new(self.thermo.r, self.thermo.gamma, self.thermo.a)?)
    }

    pub fn coefficients(&self) -> CoefficientModel {
        let c = &self.coefficients;
        match c.model {
            ModelName::Default => CoefficientModel::Default {
                mu0: c.mu0,
                kappa0: c.kappa0,
                alpha0: c.alpha0,
                eps: c.eps,
                k1: c.k1,
            },
            ModelName::Constant => CoefficientModel::Constant {
                mu: c.mu,
                kappa: c.kappa,
                alpha: c.alpha,
            },
            ModelName::PowerLaw => CoefficientModel::PowerLaw {
                mu0: c.mu0,
                mu_exp: c.mu_exp,
                kappa0: c.kappa0,
                kappa_exp: c.kappa_exp,
                alpha0: c.alpha0,
            },
        }
    }

    pub fn end_states(&self) -> EndStates {
        let e = &self.end_states;
        EndStates::new(
            [e.v_minus, e.u_minus, e.theta_minus],
            [e.v_plus, e.u_plus, e.theta_plus],
        )
    }

    /// Wave mode of the ansatz a time-dependent scenario follows.
    pub fn wave_mode(&self) -> WaveMode {
        let kind = match self.scenario.kind {
            ScenarioKind::Convergence => self.scenario.base,
            k => k,
        };
        match kind {
            ScenarioKind::Composite => WaveMode::Full,
            ScenarioKind::Rarefaction => match self.scenario.family {
                FamilyName::Minus => WaveMode::RarefactionMinus,
                FamilyName::Plus => WaveMode::RarefactionPlus,
            },
            _ => WaveMode::ContactOnly,
        }
    }

    /// Flat `key = value` lines of the resolved configuration.
    pub fn resolved(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let mut push = |k: &str, v: String| out.push((k.to_string(), v));
        let t = &self.thermo;
        push("thermo.r", t.r.to_string());
        push("thermo.gamma", t.gamma.to_string());
        push("thermo.a", t.a.to_string());
        let coeff = self.coefficients();
        push("coefficients.model", coeff.name().to_string());
        for (k, v) in coeff.params() {
            push(&format!("coefficients.{k}"), v.to_string());
        }
        let e = &self.end_states;
        push("end_states.v_minus", e.v_minus.to_string());
        push("end_states.u_minus", e.u_minus.to_string());
        push("end_states.theta_minus", e.theta_minus.to_string());
        push("end_states.v_plus", e.v_plus.to_string());
        push("end_states.u_plus", e.u_plus.to_string());
        push("end_states.theta_plus", e.theta_plus.to_string());
        push("scenario.kind", format!("{:?}", self.scenario.kind).to_lowercase());
        push("scenario.mode", self.wave_mode().name().to_string());
        push("scenario.profile_nodes", self.scenario.profile_nodes.to_string());
        if let Some(x) = self.scenario.xi_half_width {
            push("scenario.xi_half_width", x.to_string());
        }
        push("grid.half_width", self.grid.half_width.to_string());
        push("grid.n_points", self.grid.n_points.to_string());
        let s = &self.solver;
        push("solver.cfl", s.cfl.to_string());
        push("solver.t_final", s.t_final.to_string());
        push("solver.cadence", s.cadence.to_string());
        push("solver.max_halvings", s.max_halvings.to_string());
        let b = s.bounds();
        push("solver.v_min", b.v_min.to_string());
        push("solver.v_max", b.v_max.to_string());
        push("solver.theta_min", b.theta_min.to_string());
        push("solver.theta_max", b.theta_max.to_string());
        let p = &self.perturbation;
        push("perturbation.shape", format!("{:?}", p.shape).to_lowercase());
        push("perturbation.phi", p.phi.to_string());
        push("perturbation.psi", p.psi.to_string());
        push("perturbation.zeta", p.zeta.to_string());
        push("perturbation.center", p.center.to_string());
        push("perturbation.width", p.width.to_string());
        push("perturbation.wavenumber", p.wavenumber.to_string());
        push("output.dir", self.output.dir.display().to_string());
        let times: Vec<String> = self.output.profile_times.iter().map(|t| t.to_string()).collect();
        push("output.profile_times", format!("[{}]", times.join(", ")));
        out
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let thermo = self.thermo()?;
        let ends = self.end_states();
        ends.validate()?;
        let s = &self.solver;
        let theta_cap = s.theta_max.unwrap_or(ends.theta_minus.max(ends.theta_plus));
        self.coefficients().validate(theta_cap, false)?;

        if !(self.grid.half_width > 0.0 && self.grid.half_width.is_finite()) {
            return Err(invalid(format!("grid.half_width must be > 0, got {}", self.grid.half_width)));
        }
        if self.grid.n_points < 8 {
            return Err(invalid(format!("grid.n_points must be >= 8, got {}", self.grid.n_points)));
        }
        if !(s.cfl > 0.0 && s.cfl <= 1.0) {
            return Err(invalid(format!("solver.cfl must be in (0, 1], got {}", s.cfl)));
        }
        if !(s.t_final >= 0.0 && s.t_final.is_finite()) {
            return Err(invalid(format!("solver.t_final must be >= 0, got {}", s.t_final)));
        }
        if !(s.cadence > 0.0 && s.cadence.is_finite()) {
            return Err(invalid(format!("solver.cadence must be > 0, got {}", s.cadence)));
        }
        let b = s.bounds();
        if !(b.v_min < b.v_max && b.theta_min < b.theta_max) {
            return Err(invalid("solver bounds must satisfy v_min < v_max and theta_min < theta_max"));
        }
        let n = self.scenario.profile_nodes;
        if n < 101 || n % 2 == 0 {
            return Err(invalid(format!("scenario.profile_nodes must be odd and >= 101, got {n}")));
        }
        let p = &self.perturbation;
        if !(p.width > 0.0) {
            return Err(invalid(format!("perturbation.width must be > 0, got {}", p.width)));
        }
        if [p.phi, p.psi, p.zeta, p.center, p.wavenumber].iter().any(|x| !x.is_finite()) {
            return Err(invalid("perturbation parameters must be finite"));
        }
        if self.output.profile_times.iter().any(|&t| !(t >= 0.0 && t <= s.t_final)) {
            return Err(invalid("output.profile_times must lie in [0, t_final]"));
        }
        if self.scenario.kind == ScenarioKind::Convergence
            && !matches!(self.scenario.base, ScenarioKind::Contact | ScenarioKind::Composite)
        {
            return Err(invalid("scenario.base must be contact or composite"));
        }

        match self.wave_mode() {
            WaveMode::ContactOnly => {
                if ends.u_minus != ends.u_plus {
                    return Err(invalid("contact scenario requires u_minus == u_plus"));
                }
                let pm = thermo.pressure(ends.v_minus, ends.theta_minus)?;
                let pp = thermo.pressure(ends.v_plus, ends.theta_plus)?;
                if (pm - pp).abs() > 1e-12 * pm.max(pp) {
                    return Err(invalid(format!(
                        "contact scenario requires matched pressures, got p_minus = {pm} and p_plus = {pp}"
                    )));
                }
            }
            mode => {
                let m = solve_middle_states(&ends, &thermo)?;
                let close = |a: [f64; 3], b: [f64; 3]| a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= 1e-9 * (1.0 + y.abs()));
                let (stay_l, stay_r) = (close(m.minus(), ends.minus()), close(m.plus(), ends.plus()));
                match mode {
                    WaveMode::RarefactionMinus if !stay_r => {
                        return Err(invalid("rarefaction scenario (minus) requires no contact or 3-wave"))
                    }
                    WaveMode::RarefactionPlus if !stay_l => {
                        return Err(invalid("rarefaction scenario (plus) requires no 1-wave or contact"))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

/// 1-based line of a byte offset.
fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.span().map_or(1, |s| line_of(text, s.start)),
        message: e.message().to_string(),
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &std::path::Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}
