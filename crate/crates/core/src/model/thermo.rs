//! Ideal-gas closure in Lagrangian variables.
//!
//! The state is described by specific volume `v`, temperature `theta`, and
//! (for the wave curves) the specific entropy `s`. The pressure has the two
//! equivalent forms `R θ / v` and `A v^{-γ} exp((γ-1) s / R)`.

use crate::error::{Error, Result};

/// Gas constants plus the derived heat capacity and `δ = γ - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoParams {
    r: f64,
    gamma: f64,
    a: f64,
}

impl ThermoParams {
    pub fn new(r: f64, gamma: f64, a: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!("gas constant R must be > 0, got {r}")));
        }
        if !(gamma > 1.0 && gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!("gamma must be > 1, got {gamma}")));
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidParameter(format!("pressure constant A must be > 0, got {a}")));
        }
        Ok(Self { r, gamma, a })
    }

    #[inline]
    pub fn r(&self) -> f64 {
        self.r
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    /// `δ = γ - 1`.
    #[inline]
    pub fn delta(&self) -> f64 {
        self.gamma - 1.0
    }

    /// Specific heat at constant volume, `R / (γ - 1)`.
    #[inline]
    pub fn cv(&self) -> f64 {
        self.r / self.delta()
    }

    pub fn pressure(&self, v: f64, theta: f64) -> Result<f64> {
        positive("v", v)?;
        positive("theta", theta)?;
        Ok(self.pressure_unchecked(v, theta))
    }

    #[inline]
    pub(crate) fn pressure_unchecked(&self, v: f64, theta: f64) -> f64 {
        self.r * theta / v
    }

    /// `s = R/(γ-1) ln(Rθ/A) + R ln v`.
    pub fn entropy(&self, v: f64, theta: f64) -> Result<f64> {
        positive("v", v)?;
        positive("theta", theta)?;
        Ok(self.cv() * (self.r * theta / self.a).ln() + self.r * v.ln())
    }

    /// Inverse of [`entropy`](Self::entropy) in the temperature argument.
    pub fn temp_from_entropy(&self, v: f64, s: f64) -> Result<f64> {
        positive("v", v)?;
        // θ = (A/R) v^{1-γ} exp((γ-1) s / R)
        Ok(self.a / self.r * (self.delta() * s / self.r - self.delta() * v.ln()).exp())
    }

    /// Entropy form of the pressure law.
    pub fn pressure_from_entropy(&self, v: f64, s: f64) -> Result<f64> {
        positive("v", v)?;
        Ok(self.a * (self.delta() * s / self.r - self.gamma * v.ln()).exp())
    }

    /// `A γ exp((γ-1) s / R)`; the squared characteristic speed is this times `v^{-γ-1}`.
    #[inline]
    pub(crate) fn speed_factor(&self, s: f64) -> f64 {
        self.a * self.gamma * (self.delta() * s / self.r).exp()
    }

    /// Characteristic speed `λ_±(v, s) = ±sqrt(A γ v^{-γ-1} e^{(γ-1)s/R})`.
    pub fn lambda(&self, v: f64, s: f64, family: Family) -> Result<f64> {
        positive("v", v)?;
        let mag = (self.speed_factor(s) * v.powf(-self.gamma - 1.0)).sqrt();
        Ok(family.sign() * mag)
    }

    /// Sound speed of the Lagrangian system, `sqrt(γ p / v)`.
    #[inline]
    pub fn sound_speed(&self, v: f64, theta: f64) -> f64 {
        (self.gamma * self.pressure_unchecked(v, theta) / v).sqrt()
    }
}

/// Genuinely nonlinear wave family: `Minus` is the 1-family (λ₋ < 0),
/// `Plus` the 3-family (λ₊ > 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Minus,
    Plus,
}

impl Family {
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Family::Minus => -1.0,
            Family::Plus => 1.0,
        }
    }
}

/// Relative-entropy weight `Φ(s) = s - 1 - ln s`.
pub fn phi_entropy(s: f64) -> Result<f64> {
    positive("s", s)?;
    Ok(phi_unchecked(s))
}

#[inline]
pub(crate) fn phi_unchecked(s: f64) -> f64 {
    // Near s = 1 the direct form cancels catastrophically; ln_1p keeps it accurate.
    let e = s - 1.0;
    e - e.ln_1p()
}

pub(crate) fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {x}")))
    }
}
