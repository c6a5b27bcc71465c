//! Power-law fits `y ≈ A (1+t)^p` by least squares in log-log coordinates.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    /// Fitted exponent `p`.
    pub slope: f64,
    /// `ln A`.
    pub intercept: f64,
    /// Root-mean-square misfit in `ln y`.
    pub residual: f64,
}

impl DecayFit {
    pub fn amplitude(&self) -> f64 {
        self.intercept.exp()
    }
}

pub fn fit_decay(t: &[f64], y: &[f64]) -> Result<DecayFit> {
    if t.len() != y.len() {
        return Err(Error::SamplingMismatch(format!(
            "{} times but {} values",
            t.len(),
            y.len()
        )));
    }
    if t.len() < 5 {
        return Err(Error::Degenerate(format!("need at least 5 samples, got {}", t.len())));
    }
    if let Some(bad) = y.iter().find(|&&v| !(v > 0.0 && v.is_finite())) {
        return Err(Error::Degenerate(format!("decay fit needs positive values, got {bad}")));
    }
    if let Some(bad) = t.iter().find(|&&s| !(s >= 0.0 && s.is_finite())) {
        return Err(Error::Degenerate(format!("decay fit needs t >= 0, got {bad}")));
    }
    if y.iter().all(|&v| v == y[0]) {
        return Ok(DecayFit {
            slope: 0.0,
            intercept: y[0].ln(),
            residual: 0.0,
        });
    }
    let xs: Vec<f64> = t.iter().map(|s| s.ln_1p()).collect();
    let ys: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate("all sample times coincide".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(DecayFit {
        slope,
        intercept,
        residual: (ss / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn times() -> Vec<f64> {
        (1..=100).map(|k| k as f64).collect()
    }

    #[test]
    fn exact_power_laws() {
        let t = times();
        let y: Vec<f64> = t.iter().map(|s| (1.0 + s).powf(-1.5)).collect();
        assert!((fit_decay(&t, &y).unwrap().slope + 1.5).abs() < 1e-10);
        let y: Vec<f64> = t.iter().map(|s| 3.0 * (1.0 + s).powf(-0.875)).collect();
        let f = fit_decay(&t, &y).unwrap();
        assert!((f.slope + 0.875).abs() < 1e-10);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn bounded_noise() {
        let t = times();
        let y: Vec<f64> = t.iter().map(|s| (1.0 + 0.05 * s.sin()) / (1.0 + s)).collect();
        let s = fit_decay(&t, &y).unwrap().slope;
        assert!((-1.05..=-0.95).contains(&s));
    }

    #[test]
    fn degenerate_inputs() {
        let t = times();
        let y = vec![2.0; t.len()];
        let f = fit_decay(&t, &y).unwrap();
        assert_eq!(f.slope, 0.0);
        assert_eq!(f.residual, 0.0);
        assert!(fit_decay(&t[..4], &y[..4]).is_err());
        let mut z = y.clone();
        z[3] = 0.0;
        assert!(matches!(fit_decay(&t, &z), Err(Error::Degenerate(_))));
    }
}
