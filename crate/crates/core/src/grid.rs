//! Uniform grid on `[-L, L]`, second-order central stencils, trapezoid
//! quadrature and norms.
//!
//! Stencils that reach past either end read constant-extrapolated ghost
//! values (the ghost equals the boundary node). This matches the far-field
//! clamp used by the solver: boundary nodes hold the far-field state, and the
//! two ghosts on each side copy it.

use crate::error::{check_len, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    half_width: f64,
    n: usize,
    dx: f64,
}

impl Grid {
    pub fn new(half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "grid half-width must be > 0, got {half_width}"
            )));
        }
        if n_points < 8 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 8 points, got {n_points}"
            )));
        }
        Ok(Self {
            half_width,
            n: n_points,
            dx: 2.0 * half_width / (n_points - 1) as f64,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        self.dx
    }

    #[inline]
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        if i == self.n - 1 {
            self.half_width
        } else {
            -self.half_width + i as f64 * self.dx
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Samples `f` at every node.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..self.n).map(|i| f(self.x(i))).collect()
    }

    pub fn d1(&self, f: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n];
        self.d1_into(f, &mut out)?;
        Ok(out)
    }

    pub fn d2(&self, f: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n];
        self.d2_into(f, &mut out)?;
        Ok(out)
    }

    pub fn d3(&self, f: &[f64]) -> Result<Vec<f64>> {
        check_len(self.n, f.len())?;
        let n = self.n;
        let c = 1.0 / (2.0 * self.dx.powi(3));
        let g = |i: isize| f[i.clamp(0, n as isize - 1) as usize];
        Ok((0..n as isize)
            .map(|i| c * (g(i + 2) - 2.0 * g(i + 1) + 2.0 * g(i - 1) - g(i - 2)))
            .collect())
    }

    /// Central first difference written into `out`.
    pub fn d1_into(&self, f: &[f64], out: &mut [f64]) -> Result<()> {
        check_len(self.n, f.len())?;
        check_len(self.n, out.len())?;
        let n = self.n;
        let c = 0.5 / self.dx;
        out[0] = c * (f[1] - f[0]);
        for i in 1..n - 1 {
            out[i] = c * (f[i + 1] - f[i - 1]);
        }
        out[n - 1] = c * (f[n - 1] - f[n - 2]);
        Ok(())
    }

    /// Central second difference written into `out`.
    pub fn d2_into(&self, f: &[f64], out: &mut [f64]) -> Result<()> {
        check_len(self.n, f.len())?;
        check_len(self.n, out.len())?;
        let n = self.n;
        let c = 1.0 / (self.dx * self.dx);
        out[0] = c * (f[1] - f[0]);
        for i in 1..n - 1 {
            out[i] = c * (f[i + 1] - 2.0 * f[i] + f[i - 1]);
        }
        out[n - 1] = c * (f[n - 2] - f[n - 1]);
        Ok(())
    }

    /// Trapezoid rule over the whole grid.
    pub fn integrate(&self, f: &[f64]) -> Result<f64> {
        check_len(self.n, f.len())?;
        Ok(self.trapezoid(f.iter().copied()))
    }

    pub fn sup_norm(&self, f: &[f64]) -> Result<f64> {
        check_len(self.n, f.len())?;
        Ok(f.iter().fold(0.0, |m, x| m.max(x.abs())))
    }

    pub fn l1_norm(&self, f: &[f64]) -> Result<f64> {
        check_len(self.n, f.len())?;
        Ok(self.trapezoid(f.iter().map(|x| x.abs())))
    }

    /// `sqrt(integrate(f²))`.
    pub fn l2_norm(&self, f: &[f64]) -> Result<f64> {
        check_len(self.n, f.len())?;
        Ok(self.trapezoid(f.iter().map(|x| x * x)).sqrt())
    }

    pub(crate) fn trapezoid(&self, f: impl Iterator<Item = f64>) -> f64 {
        let n = self.n;
        let mut sum = 0.0;
        for (i, x) in f.enumerate() {
            sum += if i == 0 || i == n - 1 { 0.5 * x } else { x };
        }
        sum * self.dx
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}
