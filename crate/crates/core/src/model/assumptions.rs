//! Sampled verification of the structural assumptions on μ, κ and α̃.
//!
//! Nothing here aborts: every check lands in [`AssumptionReport`] and the
//! violations are listed in `flags`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::coefficients::{CoefficientModel, ThetaWindow};

const SEED: u64 = 0x5eed_c0ef;
const EXPONENT_TOL: f64 = 1e-6;

/// Sign classification of κ_θθ over the sampled box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Concavity {
    /// κ_θθ < 0 at every sample.
    Strict,
    /// κ_θθ ≤ 0 everywhere but vanishes somewhere.
    NonStrict,
    /// κ_θθ > 0 at some sample.
    Violated,
}

/// Power-law exponents of `μ₁(v) ~ v^{-a}` (v → 0) and `v^{-b}` (v → ∞), or
/// the analogous `(c, d)` for κ₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthExponents {
    pub near_zero: f64,
    pub near_infinity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssumptionReport {
    pub samples: usize,
    pub mu_min: f64,
    pub mu_max: f64,
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    /// Sampled sup of μ/α̃ (the bound M₀).
    pub mu_over_alpha_sup: f64,
    /// Sampled sup of |κ_θ|; compare against the configured ε.
    pub kappa_theta_sup: f64,
    pub kappa_thetatheta_max: f64,
    pub concavity: Concavity,
    /// Sampled max of |g|, absolute and relative to `3κμ`.
    pub g_abs_max: f64,
    pub g_rel_max: f64,
    /// Sampled max of the coupling function f; f ≤ 0 is the alternative to g ≡ 0.
    pub f_max: f64,
    /// Exponents `(a, b)` of μ₁.
    pub mu1_exponents: GrowthExponents,
    /// Exponents `(c, d)` of κ₁.
    pub kappa1_exponents: GrowthExponents,
    /// `a ≥ 0` and `b ≤ 1/2`.
    pub viscosity_growth_ok: bool,
    /// `c ≤ 3` and `d ≥ 2`.
    pub capillarity_growth_ok: bool,
    pub flags: Vec<String>,
}

impl AssumptionReport {
    pub fn all_satisfied(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Samples the coefficient model on a log-spaced `(v, θ)` lattice plus
/// `n_samples²` seeded uniform points and reports every structural check.
///
/// Growth exponents are least-squares slopes of `ln μ₁` and `ln κ₁` against
/// `ln v` over the outer decade at each end of `v_range`.
pub fn check_assumptions(
    coeff: &CoefficientModel,
    v_range: (f64, f64),
    theta_range: (f64, f64),
    n_samples: usize,
) -> AssumptionReport {
    let n = n_samples.max(2);
    let (v_lo, v_hi) = v_range;
    let (th_lo, th_hi) = theta_range;

    let mut points = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        let v = log_lerp(v_lo, v_hi, i, n);
        for j in 0..n {
            points.push((v, log_lerp(th_lo, th_hi, j, n)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..n * n {
        let v = rng.gen_range(v_lo..=v_hi);
        let th = rng.gen_range(th_lo..=th_hi);
        points.push((v, th));
    }

    let mut r = AssumptionReport {
        samples: points.len(),
        mu_min: f64::INFINITY,
        mu_max: f64::NEG_INFINITY,
        kappa_min: f64::INFINITY,
        kappa_max: f64::NEG_INFINITY,
        alpha_min: f64::INFINITY,
        alpha_max: f64::NEG_INFINITY,
        mu_over_alpha_sup: 0.0,
        kappa_theta_sup: 0.0,
        kappa_thetatheta_max: f64::NEG_INFINITY,
        concavity: Concavity::Strict,
        g_abs_max: 0.0,
        g_rel_max: 0.0,
        f_max: f64::NEG_INFINITY,
        mu1_exponents: GrowthExponents {
            near_zero: 0.0,
            near_infinity: 0.0,
        },
        kappa1_exponents: GrowthExponents {
            near_zero: 0.0,
            near_infinity: 0.0,
        },
        viscosity_growth_ok: false,
        capillarity_growth_ok: false,
        flags: Vec::new(),
    };

    for &(v, th) in &points {
        let c = coeff.eval(v, th);
        r.mu_min = r.mu_min.min(c.mu);
        r.mu_max = r.mu_max.max(c.mu);
        r.kappa_min = r.kappa_min.min(c.kappa);
        r.kappa_max = r.kappa_max.max(c.kappa);
        r.alpha_min = r.alpha_min.min(c.alpha);
        r.alpha_max = r.alpha_max.max(c.alpha);
        let ratio = if c.alpha > 0.0 { c.mu / c.alpha } else { f64::INFINITY };
        r.mu_over_alpha_sup = r.mu_over_alpha_sup.max(ratio);
        r.kappa_theta_sup = r.kappa_theta_sup.max(c.kappa_theta.abs());
        r.kappa_thetatheta_max = r.kappa_thetatheta_max.max(c.kappa_thetatheta);

        let g = coeff.g_coupling(v, th);
        r.g_abs_max = r.g_abs_max.max(g.abs());
        let scale = (3.0 * c.kappa * c.mu).abs();
        if scale > 0.0 {
            r.g_rel_max = r.g_rel_max.max(g.abs() / scale);
        }
        r.f_max = r.f_max.max(f_coupling(coeff, v, th));
    }

    r.concavity = if r.kappa_thetatheta_max < 0.0 {
        Concavity::Strict
    } else if r.kappa_thetatheta_max == 0.0 {
        Concavity::NonStrict
    } else {
        Concavity::Violated
    };

    let window = ThetaWindow::from_bounds(th_lo, th_hi);
    r.mu1_exponents = growth_exponents(v_lo, v_hi, |v| coeff.mu1(v, window));
    r.kappa1_exponents = growth_exponents(v_lo, v_hi, |v| coeff.kappa1(v, window));
    r.viscosity_growth_ok = r.mu1_exponents.near_zero >= -EXPONENT_TOL
        && r.mu1_exponents.near_infinity <= 0.5 + EXPONENT_TOL;
    r.capillarity_growth_ok = r.kappa1_exponents.near_zero <= 3.0 + EXPONENT_TOL
        && r.kappa1_exponents.near_infinity >= 2.0 - EXPONENT_TOL;

    if r.mu_min <= 0.0 {
        r.flags.push(format!("mu not positive (min {:.3e})", r.mu_min));
    }
    if r.kappa_min <= 0.0 {
        r.flags.push(format!("kappa not positive (min {:.3e})", r.kappa_min));
    }
    if r.alpha_min <= 0.0 {
        r.flags.push(format!("alpha_tilde not positive (min {:.3e})", r.alpha_min));
    }
    if !r.mu_over_alpha_sup.is_finite() {
        r.flags.push("mu/alpha_tilde unbounded".into());
    }
    match r.concavity {
        Concavity::Strict => {}
        Concavity::NonStrict => r.flags.push("kappa_thetatheta = 0 somewhere (non-strict)".into()),
        Concavity::Violated => r.flags.push(format!(
            "kappa_thetatheta > 0 (max {:.3e})",
            r.kappa_thetatheta_max
        )),
    }
    if !r.viscosity_growth_ok && !r.capillarity_growth_ok {
        r.flags.push(format!(
            "growth conditions violated: mu1 exponents (a={:.4}, b={:.4}), kappa1 exponents (c={:.4}, d={:.4})",
            r.mu1_exponents.near_zero,
            r.mu1_exponents.near_infinity,
            r.kappa1_exponents.near_zero,
            r.kappa1_exponents.near_infinity
        ));
    }
    if r.g_rel_max > 1e-12 && r.f_max > 0.0 {
        r.flags.push(format!(
            "coupling violated: max|g|/3κμ = {:.3e} and max f = {:.3e}",
            r.g_rel_max, r.f_max
        ));
    }
    r
}

fn log_lerp(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    let s = i as f64 / (n - 1) as f64;
    (lo.ln() + s * (hi.ln() - lo.ln())).exp()
}

/// Negated log-log slopes over the outer decade at each end of `[lo, hi]`.
fn growth_exponents(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> GrowthExponents {
    let decade = |a: f64, b: f64| -> f64 {
        let m = 21;
        let xs: Vec<f64> = (0..m).map(|i| log_lerp(a, b, i, m).ln()).collect();
        let ys: Vec<f64> = (0..m)
            .map(|i| f(log_lerp(a, b, i, m)).max(f64::MIN_POSITIVE).ln())
            .collect();
        -least_squares_slope(&xs, &ys)
    };
    let span = (hi / lo).min(10.0);
    GrowthExponents {
        near_zero: decade(lo, lo * span),
        near_infinity: decade(hi / span, hi),
    }
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// The coupling function f(v, θ), evaluated with central differences in v.
fn f_coupling(coeff: &CoefficientModel, v: f64, th: f64) -> f64 {
    let h = 1e-4 * v;
    let d = |g: &dyn Fn(f64) -> f64, x: f64| (g(x + h) - g(x - h)) / (2.0 * h);

    let s = |x: f64| (coeff.mu(x, th) * coeff.kappa(x, th)).max(0.0).sqrt() / x.powi(3);
    let s_sv = |x: f64| s(x) * d(&s, x);
    let mu_over_v = |x: f64| coeff.mu(x, th) / x;
    let korteweg = |x: f64| {
        let c = coeff.eval(x, th);
        5.0 * c.kappa - x * c.kappa_v
    };
    let t3 = |x: f64| coeff.kappa(x, th) / x.powi(5) * d(&mu_over_v, x);
    let t5 = |x: f64| coeff.mu(x, th) / (2.0 * x.powi(7)) * korteweg(x);

    let sv = d(&s, v);
    -2.0 / 3.0 * d(&s_sv, v) + sv * sv + d(&t3, v) / 3.0
        + d(&mu_over_v, v) * korteweg(v) / (2.0 * v.powi(6))
        - d(&t5, v) / 3.0
}
