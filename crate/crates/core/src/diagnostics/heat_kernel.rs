//! Heat-kernel weight pair `(w, g)` with `4α g_t = δ w_x`.
//!
//! `w = (1+t)^{-1/2} exp(-α x² / (δ(1+t)))` and
//! `g = √(πδ/α)/2 · (1 + erf(x √(α/(δ(1+t)))))`.

use crate::error::{Error, Result};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatKernelPair {
    alpha: f64,
    delta: f64,
}

impl HeatKernelPair {
    pub fn new(alpha: f64, delta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameter(format!("delta must be > 0, got {delta}")));
        }
        Ok(Self { alpha, delta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    #[inline]
    fn z(&self, t: f64, x: f64) -> f64 {
        x * (self.alpha / (self.delta * (1.0 + t))).sqrt()
    }

    pub fn w(&self, t: f64, x: f64) -> f64 {
        let z = self.z(t, x);
        (-z * z).exp() / (1.0 + t).sqrt()
    }

    pub fn w_x(&self, t: f64, x: f64) -> f64 {
        let z = self.z(t, x);
        -2.0 * self.alpha * x * (-z * z).exp() / (self.delta * (1.0 + t).powf(1.5))
    }

    pub fn g(&self, t: f64, x: f64) -> f64 {
        0.5 * (PI * self.delta / self.alpha).sqrt() * (1.0 + libm::erf(self.z(t, x)))
    }

    pub fn g_t(&self, t: f64, x: f64) -> f64 {
        let z = self.z(t, x);
        -(self.delta / self.alpha).sqrt() * (-z * z).exp() * z / (2.0 * (1.0 + t))
    }

    /// `sup_x g = √π α^{-1/2} δ^{1/2}`.
    pub fn g_sup(&self) -> f64 {
        PI.sqrt() * (self.delta / self.alpha).sqrt()
    }
}
