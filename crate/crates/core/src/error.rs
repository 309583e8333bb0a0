use thiserror::Error;

/// Errors raised by the numerical kernels, optimizers and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature could not meet its tolerance.
    #[error("quadrature did not converge: estimated error {estimate:e} exceeds tolerance {tolerance:e}")]
    Convergence { estimate: f64, tolerance: f64 },

    /// `beta >= 1/2`: the envelope is monotone and the closed form applies.
    #[error("beta = {beta} is in the closed-form regime (beta >= 1/2); no interior critical point")]
    Case { beta: f64 },

    /// A bisection bracket does not straddle the threshold.
    #[error("bracket [{lo}, {hi}] does not straddle the threshold (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// The bisection trace in `c` contradicts monotonicity of the threshold predicate.
    #[error("threshold predicate is not monotone: min h({c_low}) = {h_low} > min h({c_high}) = {h_high}")]
    NonMonotone { c_low: f64, h_low: f64, c_high: f64, h_high: f64 },

    /// An inequality that holds unconditionally was violated.
    #[error("audit failure: {0}")]
    Audit(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be finite, got {x}"))
    }
}
