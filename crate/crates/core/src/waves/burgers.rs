//! Inviscid Burgers equation `w_t + w w_x = 0` with smoothed step data
//! `w(0,x) = (w₊+w₋)/2 + (w₊-w₋)/2 tanh x`.
//!
//! For `w₋ ≤ w₊` characteristics never cross, so `w(t,x)` is the unique root
//! of `w - w₀(x - w t) = 0` on `[w₋, w₊]`.

use crate::error::{Error, Result};

const BISECTION_STEPS: usize = 8;
const MAX_ITERATIONS: usize = 200;
const RESIDUAL_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Burgers {
    w_minus: f64,
    w_plus: f64,
}

/// `w` and its derivatives at one point.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BurgersPoint {
    pub w: f64,
    pub w_x: f64,
    pub w_xx: f64,
    pub w_xxx: f64,
    pub w_t: f64,
}

impl Burgers {
    pub fn new(w_minus: f64, w_plus: f64) -> Result<Self> {
        if !(w_minus.is_finite() && w_plus.is_finite()) || w_minus > w_plus {
            return Err(Error::InvalidParameter(format!(
                "Burgers end speeds must satisfy w_minus <= w_plus, got ({w_minus}, {w_plus})"
            )));
        }
        Ok(Self { w_minus, w_plus })
    }

    #[inline]
    pub fn w_minus(&self) -> f64 {
        self.w_minus
    }

    #[inline]
    pub fn w_plus(&self) -> f64 {
        self.w_plus
    }

    #[inline]
    fn mid(&self) -> f64 {
        0.5 * (self.w_plus + self.w_minus)
    }

    #[inline]
    fn half_jump(&self) -> f64 {
        0.5 * (self.w_plus - self.w_minus)
    }

    /// Initial data and its first three derivatives at `z`.
    #[inline]
    pub fn initial(&self, z: f64) -> [f64; 4] {
        let th = z.tanh();
        let sech2 = 1.0 - th * th;
        let j = self.half_jump();
        [
            self.mid() + j * th,
            j * sech2,
            -2.0 * j * th * sech2,
            -2.0 * j * sech2 * (1.0 - 3.0 * th * th),
        ]
    }

    /// `w - w₀(x - w t)`; zero at the solution.
    #[inline]
    pub fn implicit_residual(&self, w: f64, x: f64, t: f64) -> f64 {
        w - self.initial(x - w * t)[0]
    }

    /// Root of the implicit relation: a few bisection steps on `[w₋, w₊]`,
    /// then Newton iterations kept inside the shrinking bracket.
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        if self.w_minus == self.w_plus {
            return self.w_minus;
        }
        if t == 0.0 {
            return self.initial(x)[0];
        }
        let (mut lo, mut hi) = (self.w_minus, self.w_plus);
        let mut w = 0.5 * (lo + hi);
        for it in 0..MAX_ITERATIONS {
            let [w0, w0p, _, _] = self.initial(x - w * t);
            let f = w - w0;
            if f.abs() <= RESIDUAL_TOL {
                break;
            }
            if f > 0.0 {
                hi = w;
            } else {
                lo = w;
            }
            if hi - lo <= 2.0 * f64::EPSILON * w.abs().max(1.0) {
                break;
            }
            let mut next = 0.5 * (lo + hi);
            if it >= BISECTION_STEPS {
                let newton = w - f / (1.0 + t * w0p);
                if newton > lo && newton < hi {
                    next = newton;
                }
            }
            w = next;
        }
        w
    }

    /// Solution and derivatives. With `q = 1 + t w₀'(ξ)`, `ξ = x - w t`:
    /// `w_x = w₀'/q`, `w_xx = w₀''/q³`, `w_xxx = w₀'''/q⁴ - 3t w₀''²/q⁵`, `w_t = -w w_x`.
    pub fn eval_derivs(&self, x: f64, t: f64) -> BurgersPoint {
        if self.w_minus == self.w_plus {
            return BurgersPoint {
                w: self.w_minus,
                ..BurgersPoint::default()
            };
        }
        let w = self.eval(x, t);
        let [_, d1, d2, d3] = self.initial(x - w * t);
        let q = 1.0 + t * d1;
        let w_x = d1 / q;
        let q3 = q * q * q;
        let w_xx = d2 / q3;
        let w_xxx = d3 / (q3 * q) - 3.0 * t * d2 * d2 / (q3 * q * q);
        BurgersPoint {
            w,
            w_x,
            w_xx,
            w_xxx,
            w_t: -w * w_x,
        }
    }
}

/// Solution of the smoothed-step Burgers problem at `(t, x)`.
pub fn burgers_eval(w_minus: f64, w_plus: f64, x: f64, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
    }
    Ok(Burgers::new(w_minus, w_plus)?.eval(x, t))
}
