use thiserror::Error;

/// Errors raised by the model, wave construction, solver and diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coefficient model violation: {0}")]
    ModelViolation(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("no sign change of the velocity mismatch on [{lo:.6e}, {hi:.6e}]: end states outside the rarefaction-contact-rarefaction region")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("damped Newton did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("positivity violated at t = {t:.6}: {what} = {value:.6e} at node {node}")]
    Positivity {
        t: f64,
        what: &'static str,
        node: usize,
        value: f64,
    },

    #[error("state left the admissible box at t = {t:.6}: {what}")]
    OutOfBounds { t: f64, what: String },

    #[error("time step collapsed at t = {t:.6} after {halvings} consecutive halvings")]
    BlowUp { t: f64, halvings: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("sampling mismatch: {0}")]
    SamplingMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}
