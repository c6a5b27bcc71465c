//! Viscosity μ(v,θ), capillarity κ(v,θ) and heat conductivity α̃(v,θ).
//!
//! Each family hand-codes the partial derivatives the system needs. The
//! derivatives are cross-checked against central differences in the tests.

use crate::error::{Error, Result};

/// All coefficient values and partials at one `(v, θ)` point.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CoeffPoint {
    pub mu: f64,
    pub mu_v: f64,
    pub mu_theta: f64,
    pub kappa: f64,
    pub kappa_v: f64,
    pub kappa_theta: f64,
    pub kappa_thetatheta: f64,
    pub kappa_vtheta: f64,
    pub alpha: f64,
    pub alpha_v: f64,
    pub alpha_theta: f64,
}

/// A named coefficient family with its numeric parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoefficientModel {
    /// `μ = μ0`, `κ = κ0 v³ (K1 - ε θ²)`, `α̃ = α0 θ`.
    ///
    /// Satisfies `3κμ + 2vκμ_v - vμκ_v ≡ 0` and has `κ_θθ = -2εκ0 v³ < 0`.
    /// Since `α̃(RΘ/p, Θ) = α0 Θ`, the contact-wave diffusion equation is the
    /// linear heat equation.
    Default {
        mu0: f64,
        kappa0: f64,
        alpha0: f64,
        eps: f64,
        k1: f64,
    },
    /// Constant coefficients.
    Constant { mu: f64, kappa: f64, alpha: f64 },
    /// `μ = μ0 v^{-b}`, `κ = κ0 v^{-c}`, `α̃ = α0 θ`.
    PowerLaw {
        mu0: f64,
        mu_exp: f64,
        kappa0: f64,
        kappa_exp: f64,
        alpha0: f64,
    },
}

impl CoefficientModel {
    pub fn name(&self) -> &'static str {
        match self {
            CoefficientModel::Default { .. } => "default",
            CoefficientModel::Constant { .. } => "constant",
            CoefficientModel::PowerLaw { .. } => "power-law",
        }
    }

    /// Parameter names and values in a stable order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            CoefficientModel::Default {
                mu0,
                kappa0,
                alpha0,
                eps,
                k1,
            } => vec![
                ("mu0", mu0),
                ("kappa0", kappa0),
                ("alpha0", alpha0),
                ("eps", eps),
                ("k1", k1),
            ],
            CoefficientModel::Constant { mu, kappa, alpha } => {
                vec![("mu", mu), ("kappa", kappa), ("alpha", alpha)]
            }
            CoefficientModel::PowerLaw {
                mu0,
                mu_exp,
                kappa0,
                kappa_exp,
                alpha0,
            } => vec![
                ("mu0", mu0),
                ("mu_exp", mu_exp),
                ("kappa0", kappa0),
                ("kappa_exp", kappa_exp),
                ("alpha0", alpha0),
            ],
        }
    }

    /// Checks parameter admissibility.
    ///
    /// `theta_max` is the configured temperature upper bound Θ̄; the default
    /// family must keep κ positive up to `2Θ̄`. With `allow_degenerate` the
    /// amplitudes μ0, κ0, α0 may be zero (reductions to Euler or plain
    /// Navier-Stokes); otherwise they must be strictly positive.
    pub fn validate(&self, theta_max: f64, allow_degenerate: bool) -> Result<()> {
        let amp = |name: &str, x: f64| -> Result<()> {
            let ok = if allow_degenerate { x >= 0.0 } else { x > 0.0 };
            if ok && x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "coefficient parameter {name} must be {}, got {x}",
                    if allow_degenerate { "nonnegative" } else { "positive" }
                )))
            }
        };
        match *self {
            CoefficientModel::Default {
                mu0,
                kappa0,
                alpha0,
                eps,
                k1,
            } => {
                amp("mu0", mu0)?;
                amp("kappa0", kappa0)?;
                amp("alpha0", alpha0)?;
                if !(eps >= 0.0 && eps.is_finite()) {
                    return Err(Error::InvalidParameter(format!("eps must be >= 0, got {eps}")));
                }
                let bound = eps * (2.0 * theta_max).powi(2);
                if !(k1 > bound) {
                    return Err(Error::InvalidParameter(format!(
                        "k1 = {k1} must exceed eps*(2*theta_max)^2 = {bound} so that kappa > 0"
                    )));
                }
            }
            CoefficientModel::Constant { mu, kappa, alpha } => {
                amp("mu", mu)?;
                amp("kappa", kappa)?;
                amp("alpha", alpha)?;
            }
            CoefficientModel::PowerLaw {
                mu0,
                mu_exp,
                kappa0,
                kappa_exp,
                alpha0,
            } => {
                amp("mu0", mu0)?;
                amp("kappa0", kappa0)?;
                amp("alpha0", alpha0)?;
                if !mu_exp.is_finite() || !kappa_exp.is_finite() {
                    return Err(Error::InvalidParameter("power-law exponents must be finite".into()));
                }
            }
        }
        Ok(())
    }

    /// Evaluates every coefficient and partial derivative at `(v, θ)`.
    #[inline]
    pub fn eval(&self, v: f64, theta: f64) -> CoeffPoint {
        match *self {
            CoefficientModel::Default {
                mu0,
                kappa0,
                alpha0,
                eps,
                k1,
            } => {
                let v2 = v * v;
                let v3 = v2 * v;
                let bracket = k1 - eps * theta * theta;
                CoeffPoint {
                    mu: mu0,
                    mu_v: 0.0,
                    mu_theta: 0.0,
                    kappa: kappa0 * v3 * bracket,
                    kappa_v: 3.0 * kappa0 * v2 * bracket,
                    kappa_theta: -2.0 * eps * kappa0 * v3 * theta,
                    kappa_thetatheta: -2.0 * eps * kappa0 * v3,
                    kappa_vtheta: -6.0 * eps * kappa0 * v2 * theta,
                    alpha: alpha0 * theta,
                    alpha_v: 0.0,
                    alpha_theta: alpha0,
                }
            }
            CoefficientModel::Constant { mu, kappa, alpha } => CoeffPoint {
                mu,
                kappa,
                alpha,
                ..CoeffPoint::default()
            },
            CoefficientModel::PowerLaw {
                mu0,
                mu_exp,
                kappa0,
                kappa_exp,
                alpha0,
            } => {
                let mu = mu0 * v.powf(-mu_exp);
                let kappa = kappa0 * v.powf(-kappa_exp);
                CoeffPoint {
                    mu,
                    mu_v: -mu_exp * mu / v,
                    kappa,
                    kappa_v: -kappa_exp * kappa / v,
                    alpha: alpha0 * theta,
                    alpha_theta: alpha0,
                    ..CoeffPoint::default()
                }
            }
        }
    }

    #[inline]
    pub fn mu(&self, v: f64, theta: f64) -> f64 {
        self.eval(v, theta).mu
    }

    #[inline]
    pub fn kappa(&self, v: f64, theta: f64) -> f64 {
        self.eval(v, theta).kappa
    }

    #[inline]
    pub fn alpha_tilde(&self, v: f64, theta: f64) -> f64 {
        self.eval(v, theta).alpha
    }

    /// `g(v,θ) = 3κμ + 2vκμ_v - vμκ_v`.
    pub fn g_coupling(&self, v: f64, theta: f64) -> f64 {
        let c = self.eval(v, theta);
        3.0 * c.kappa * c.mu + 2.0 * v * c.kappa * c.mu_v - v * c.mu * c.kappa_v
    }

    /// `μ₁(v) = min_θ μ(v, θ)` over the window, sampled.
    pub fn mu1(&self, v: f64, window: ThetaWindow) -> f64 {
        window.min_of(|th| self.mu(v, th))
    }

    /// `κ₁(v) = min_θ κ(v, θ)` over the window, sampled.
    pub fn kappa1(&self, v: f64, window: ThetaWindow) -> f64 {
        window.min_of(|th| self.kappa(v, th))
    }
}

/// Temperature window `[Θ_lo/2, 2Θ_hi]` over which μ₁ and κ₁ are minimized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaWindow {
    pub lo: f64,
    pub hi: f64,
}

impl ThetaWindow {
    const SAMPLES: usize = 65;

    /// Window built from the temperature bounds `(Θ_lo, Θ_hi)` of the problem.
    pub fn from_bounds(theta_lo: f64, theta_hi: f64) -> Self {
        Self {
            lo: 0.5 * theta_lo,
            hi: 2.0 * theta_hi,
        }
    }

    fn min_of(&self, f: impl Fn(f64) -> f64) -> f64 {
        let n = Self::SAMPLES;
        (0..n)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64)
            .map(f)
            .fold(f64::INFINITY, f64::min)
    }
}
