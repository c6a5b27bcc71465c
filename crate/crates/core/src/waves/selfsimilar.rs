//! Self-similar profile Θ(ξ) of the viscous contact wave.
//!
//! Θ solves `a (α̂(Θ) Θ'/Θ)' + (ξ/2) Θ' = 0` on `ℝ` with `Θ(±∞) = θ±`, where
//! `a = p₊(γ-1)/(γR²)` and `α̂(Θ) = α̃(RΘ/p₊, Θ)`. The problem is truncated
//! to `[-Ξ, Ξ]` and discretized with a conservative central scheme; the
//! nonlinear system is solved by damped Newton with a tridiagonal Jacobian.

use crate::error::{Error, Result};
use crate::model::{positive, CoefficientModel, ThermoParams};

const MAX_NEWTON: usize = 60;
const RESIDUAL_TOL: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub struct SelfSimilarProfile {
    xi: Vec<f64>,
    theta: Vec<f64>,
    dtheta: Vec<f64>,
    d2theta: Vec<f64>,
    d3theta: Vec<f64>,
    theta_minus: f64,
    theta_plus: f64,
    a: f64,
    p_plus: f64,
    r: f64,
    coeff: CoefficientModel,
    residual: f64,
    iterations: usize,
}

/// Diffusivity pieces for the profile equation: `D(Θ) = a α̂(Θ)/Θ` and `D'(Θ)`.
#[derive(Clone, Copy)]
struct Diffusivity<'a> {
    a: f64,
    r_over_p: f64,
    coeff: &'a CoefficientModel,
}

impl Diffusivity<'_> {
    #[inline]
    fn alpha_hat(&self, th: f64) -> (f64, f64) {
        let c = self.coeff.eval(self.r_over_p * th, th);
        (c.alpha, c.alpha_v * self.r_over_p + c.alpha_theta)
    }

    #[inline]
    fn eval(&self, th: f64) -> (f64, f64) {
        let (ah, ah_p) = self.alpha_hat(th);
        (self.a * ah / th, self.a * (ah_p * th - ah) / (th * th))
    }
}

/// Default truncation half-width `max(1, 12 sqrt(a max α̂ / min Θ))`.
pub fn default_xi_half_width(
    theta_minus: f64,
    theta_plus: f64,
    p_plus: f64,
    thermo: &ThermoParams,
    coeff: &CoefficientModel,
) -> f64 {
    let a = profile_constant(p_plus, thermo);
    let lo = theta_minus.min(theta_plus);
    let hi = theta_minus.max(theta_plus);
    let alpha_max = (0..=16)
        .map(|k| {
            let th = lo + (hi - lo) * k as f64 / 16.0;
            coeff.alpha_tilde(thermo.r() * th / p_plus, th)
        })
        .fold(0.0, f64::max);
    (12.0 * (a * alpha_max / lo).sqrt()).max(1.0)
}

fn profile_constant(p_plus: f64, thermo: &ThermoParams) -> f64 {
    p_plus * thermo.delta() / (thermo.gamma() * thermo.r() * thermo.r())
}

/// Solves the profile problem on `n` nodes (odd, at least 101). `xi_half_width`
/// defaults to [`default_xi_half_width`].
pub fn solve_selfsimilar(
    theta_minus: f64,
    theta_plus: f64,
    p_plus: f64,
    thermo: &ThermoParams,
    coeff: &CoefficientModel,
    xi_half_width: Option<f64>,
    n: usize,
) -> Result<SelfSimilarProfile> {
    positive("theta_minus", theta_minus)?;
    positive("theta_plus", theta_plus)?;
    positive("p_plus", p_plus)?;
    if n < 101 || n % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "profile grid needs an odd number of nodes >= 101, got {n}"
        )));
    }
    let big_xi = match xi_half_width {
        Some(x) => {
            positive("xi_half_width", x)?;
            x
        }
        None => default_xi_half_width(theta_minus, theta_plus, p_plus, thermo, coeff),
    };
    let a = profile_constant(p_plus, thermo);
    let dif = Diffusivity {
        a,
        r_over_p: thermo.r() / p_plus,
        coeff,
    };
    for th in [theta_minus, theta_plus] {
        if !(dif.eval(th).0 > 0.0) {
            return Err(Error::ModelViolation(format!(
                "heat conductivity must be positive along the profile, fails at theta = {th}"
            )));
        }
    }

    let h = 2.0 * big_xi / (n - 1) as f64;
    let xi: Vec<f64> = (0..n)
        .map(|i| if i == n - 1 { big_xi } else { -big_xi + i as f64 * h })
        .collect();

    // Initial guess: the linear heat-equation profile with D frozen at the mean temperature.
    let d_mid = dif.eval(0.5 * (theta_minus + theta_plus)).0;
    let mut theta: Vec<f64> = xi
        .iter()
        .map(|&z| {
            theta_minus + 0.5 * (theta_plus - theta_minus) * (1.0 + libm::erf(z / (2.0 * d_mid.sqrt())))
        })
        .collect();
    theta[0] = theta_minus;
    theta[n - 1] = theta_plus;

    let mut res = vec![0.0; n];
    let mut lower = vec![0.0; n];
    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n];
    let mut step = vec![0.0; n];
    let mut trial = theta.clone();

    let residual = |th: &[f64], out: &mut [f64]| -> f64 {
        let mut sup: f64 = 0.0;
        out[0] = 0.0;
        out[n - 1] = 0.0;
        for i in 1..n - 1 {
            let dr = dif.eval(0.5 * (th[i] + th[i + 1])).0;
            let dl = dif.eval(0.5 * (th[i] + th[i - 1])).0;
            let r = (dr * (th[i + 1] - th[i]) - dl * (th[i] - th[i - 1])) / (h * h)
                + 0.25 * xi[i] * (th[i + 1] - th[i - 1]) / h;
            out[i] = r;
            sup = sup.max(r.abs());
        }
        sup
    };

    let mut norm = residual(&theta, &mut res);
    let mut iterations = 0;
    while norm > RESIDUAL_TOL {
        if iterations == MAX_NEWTON {
            return Err(Error::NonConvergence {
                iterations,
                residual: norm,
            });
        }
        iterations += 1;
        diag[0] = 1.0;
        upper[0] = 0.0;
        diag[n - 1] = 1.0;
        lower[n - 1] = 0.0;
        for i in 1..n - 1 {
            let (dr, dr_p) = dif.eval(0.5 * (theta[i] + theta[i + 1]));
            let (dl, dl_p) = dif.eval(0.5 * (theta[i] + theta[i - 1]));
            let jr = theta[i + 1] - theta[i];
            let jl = theta[i] - theta[i - 1];
            let adv = 0.25 * xi[i] / h;
            upper[i] = (0.5 * dr_p * jr + dr) / (h * h) + adv;
            diag[i] = (0.5 * dr_p * jr - dr - 0.5 * dl_p * jl - dl) / (h * h);
            lower[i] = (-0.5 * dl_p * jl + dl) / (h * h) - adv;
        }
        for (s, r) in step.iter_mut().zip(&res) {
            *s = -r;
        }
        solve_tridiagonal(&lower, &mut diag, &upper, &mut step)?;

        let mut lambda = 1.0;
        let mut stalled = false;
        loop {
            for i in 0..n {
                trial[i] = theta[i] + lambda * step[i];
            }
            let new_norm = if trial.iter().all(|&t| t > 0.0) {
                residual(&trial, &mut res)
            } else {
                f64::INFINITY
            };
            if new_norm < norm {
                std::mem::swap(&mut theta, &mut trial);
                norm = new_norm;
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-6 {
                stalled = true;
                break;
            }
        }
        if stalled {
            // No descent direction left: this is the rounding floor of the residual.
            residual(&theta, &mut res);
            break;
        }
    }
    if norm > 1e3 * RESIDUAL_TOL {
        return Err(Error::NonConvergence {
            iterations,
            residual: norm,
        });
    }

    // Nodal derivatives: Θ' by differences, Θ'' from the equation, Θ''' by differences of Θ''.
    let dtheta = differentiate(&theta, h);
    let d2theta: Vec<f64> = (0..n)
        .map(|i| second_from_equation(&dif, xi[i], theta[i], dtheta[i]))
        .collect();
    let d3theta = differentiate(&d2theta, h);

    Ok(SelfSimilarProfile {
        xi,
        theta,
        dtheta,
        d2theta,
        d3theta,
        theta_minus,
        theta_plus,
        a,
        p_plus,
        r: thermo.r(),
        coeff: *coeff,
        residual: norm,
        iterations,
    })
}

#[inline]
fn second_from_equation(dif: &Diffusivity, xi: f64, th: f64, dth: f64) -> f64 {
    let (d, dp) = dif.eval(th);
    -(dp * dth * dth + 0.5 * xi * dth) / d
}

fn differentiate(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for i in 1..n - 1 {
        out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    out
}

/// Thomas algorithm; `diag` is overwritten, `rhs` becomes the solution.
fn solve_tridiagonal(lower: &[f64], diag: &mut [f64], upper: &[f64], rhs: &mut [f64]) -> Result<()> {
    let n = diag.len();
    for i in 1..n {
        if diag[i - 1] == 0.0 {
            return Err(Error::NonConvergence {
                iterations: 0,
                residual: f64::NAN,
            });
        }
        let m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for i in (0..n - 1).rev() {
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
    }
    Ok(())
}

/// Θ and its first three ξ-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ProfilePoint {
    pub theta: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl SelfSimilarProfile {
    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn dtheta(&self) -> &[f64] {
        &self.dtheta
    }

    pub fn half_width(&self) -> f64 {
        self.xi[self.xi.len() - 1]
    }

    pub fn theta_minus(&self) -> f64 {
        self.theta_minus
    }

    pub fn theta_plus(&self) -> f64 {
        self.theta_plus
    }

    /// `a = p₊(γ-1)/(γR²)`.
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    /// Sup norm of the discrete equation residual over interior nodes.
    pub fn ode_residual(&self) -> f64 {
        self.residual
    }

    pub fn newton_iterations(&self) -> usize {
        self.iterations
    }

    pub(crate) fn gas_constant(&self) -> f64 {
        self.r
    }

    /// `α̂(Θ)` and `dα̂/dΘ`.
    pub(crate) fn alpha_hat(&self, th: f64) -> (f64, f64) {
        Diffusivity {
            a: self.a,
            r_over_p: self.r / self.p_plus,
            coeff: &self.coeff,
        }
        .alpha_hat(th)
    }

    /// Θ(ξ) interpolated with cubic Hermite polynomials; constant beyond the
    /// truncated interval.
    pub fn eval(&self, xi: f64) -> f64 {
        self.eval_point(xi).theta
    }

    pub(crate) fn eval_point(&self, xi: f64) -> ProfilePoint {
        let n = self.xi.len();
        let big = self.half_width();
        if xi <= -big || xi >= big {
            let theta = if xi <= -big { self.theta_minus } else { self.theta_plus };
            return ProfilePoint {
                theta,
                d1: 0.0,
                d2: 0.0,
                d3: 0.0,
            };
        }
        let h = self.xi[1] - self.xi[0];
        let i = (((xi + big) / h) as usize).min(n - 2);
        let s = (xi - self.xi[i]) / h;
        let hermite = |f: &[f64], fp: &[f64]| {
            let s2 = s * s;
            let s3 = s2 * s;
            (2.0 * s3 - 3.0 * s2 + 1.0) * f[i]
                + (s3 - 2.0 * s2 + s) * h * fp[i]
                + (-2.0 * s3 + 3.0 * s2) * f[i + 1]
                + (s3 - s2) * h * fp[i + 1]
        };
        let theta = hermite(&self.theta, &self.dtheta);
        let d1 = hermite(&self.dtheta, &self.d2theta);
        let dif = Diffusivity {
            a: self.a,
            r_over_p: self.r / self.p_plus,
            coeff: &self.coeff,
        };
        ProfilePoint {
            theta,
            d1,
            d2: second_from_equation(&dif, xi, theta, d1),
            d3: (1.0 - s) * self.d3theta[i] + s * self.d3theta[i + 1],
        }
    }
}
