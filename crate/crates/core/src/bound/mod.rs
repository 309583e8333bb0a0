//! The normalized envelope `G(φ)` bounding the quadratic-form ratio, its
//! critical point, and the resulting upper bound for `h(c)`.
//!
//! With `y = T^{1-δ}` and `w = y·T^{-φ}` the envelope reads
//!
//! ```text
//! G(φ) = 2βc(1 - δ - φ) + (2α/π)·Si(πcφ),    α = 1/(4β),  φ ∈ [0, 1-δ]
//! ```
//!
//! and `dG/dφ = 2c(α·sinc(πcφ) - β)`. For `β >= 1/2` the derivative is
//! never positive, so the maximum sits at `φ = 0`. For `β < 1/2` it
//! decreases strictly in `φ` and changes sign at most once, at the root of
//! `sinc(πcφ₀) = 4β²`.

mod optimize;
mod verify;

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, ensure_finite, Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::search::bisect;
use crate::special::{sinc_unchecked, sine_integral};

pub use optimize::{find_critical_c, optimize_beta, BetaOptimum, OptimizationResult};
pub use verify::{cgg_comparison_bound, verify_interval, IntervalReport};

/// Parameters `(c, β, δ)`; `α = 1/(4β)` is derived so that `4αβ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundParams {
    pub c: f64,
    pub beta: f64,
    pub delta: f64,
}

impl BoundParams {
    pub fn new(c: f64, beta: f64, delta: f64) -> Result<Self> {
        ensure_finite("c", c)?;
        ensure_finite("beta", beta)?;
        ensure_finite("delta", delta)?;
        if !(c > 0.0 && c < 1.0) {
            return domain(format!("c must lie in (0, 1), got {c}"));
        }
        if beta <= 0.0 {
            return domain(format!("beta must be positive, got {beta}"));
        }
        if !(0.0..1.0).contains(&delta) {
            return domain(format!("delta must lie in [0, 1), got {delta}"));
        }
        Ok(Self { c, beta, delta })
    }

    /// `δ = 0`, i.e. `y = T`.
    pub fn with_full_range(c: f64, beta: f64) -> Result<Self> {
        Self::new(c, beta, 0.0)
    }

    pub fn alpha(&self) -> f64 {
        0.25 / self.beta
    }

    /// Upper end `1 - δ` of the admissible φ range.
    pub fn phi_max(&self) -> f64 {
        1.0 - self.delta
    }

    pub fn case(&self) -> Case {
        if self.beta >= 0.5 {
            Case::Case1
        } else {
            Case::Case2
        }
    }

    fn check_phi(&self, phi: f64) -> Result<()> {
        if !(phi >= 0.0 && phi <= self.phi_max()) {
            return domain(format!("phi must lie in [0, {}], got {phi}", self.phi_max()));
        }
        Ok(())
    }
}

/// `β >= α` (closed form, endpoint maximum) versus `β < α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    Case1,
    Case2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Root `φ₀` of `sinc(πcφ) = 4β²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub phi0: f64,
    /// `|sinc(πcφ₀) - 4β²|`
    pub residual: f64,
    /// Final bisection bracket; `sinc(πc·low) >= 4β² >= sinc(πc·high)`.
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiRoot {
    Interior(CriticalPoint),
    /// `4β² < sinc(πc(1-δ))`: `G` increases on the whole range.
    NoCriticalPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "phi")]
pub enum Maximizer {
    Interior(f64),
    /// `φ = 0`, i.e. `w = y`.
    EndpointPhiZero,
    /// `φ = 1 - δ`, i.e. `w = 1`.
    EndpointPhiOne,
}

impl Maximizer {
    pub fn phi(&self, params: &BoundParams) -> f64 {
        match *self {
            Maximizer::Interior(phi) => phi,
            Maximizer::EndpointPhiZero => 0.0,
            Maximizer::EndpointPhiOne => params.phi_max(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundEvaluation {
    pub params: BoundParams,
    pub g_max: f64,
    /// `c + g_max`
    pub h_upper: f64,
    pub maximizer: Maximizer,
    pub case: Case,
}

/// Tolerances shared by the evaluators and optimizers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConfig {
    pub quad: QuadratureSpec,
    /// Bisection width for `φ₀`.
    pub phi_tol: f64,
    /// Coarse β grid size used by [`optimize_beta`].
    pub beta_grid: usize,
    /// β resolution: golden-section width and lattice spacing of the reported β.
    pub beta_tol: f64,
    pub beta_range: (f64, f64),
}

impl Default for BoundConfig {
    fn default() -> Self {
        Self {
            quad: QuadratureSpec::default(),
            phi_tol: 1e-12,
            beta_grid: 201,
            beta_tol: 1e-3,
            beta_range: (0.3, 0.5),
        }
    }
}

impl BoundConfig {
    pub fn validate(&self) -> Result<()> {
        self.quad.validate()?;
        if !(self.phi_tol > 0.0) {
            return domain("phi_tol must be positive");
        }
        if !(self.beta_tol > 0.0) {
            return domain("beta_tol must be positive");
        }
        if self.beta_grid < 2 {
            return domain("beta_grid must be at least 2");
        }
        Ok(())
    }
}

/// The kernel `g(n) = 2 sin(πc log n / log T) / (π log n)` written in
/// `t = log n / log T`. At `t = 0` returns the limit `2c / log T`.
pub fn g_kernel(t: f64, c: f64, log_t: f64) -> Result<f64> {
    ensure_finite("t", t)?;
    if !(0.0..=1.0).contains(&t) {
        return domain(format!("t must lie in [0, 1], got {t}"));
    }
    if !(c > 0.0 && c < 1.0) {
        return domain(format!("c must lie in (0, 1), got {c}"));
    }
    if !(log_t > 0.0 && log_t.is_finite()) {
        return domain(format!("log T must be positive, got {log_t}"));
    }
    Ok(g_kernel_unchecked(t, c, log_t))
}

#[inline]
pub(crate) fn g_kernel_unchecked(t: f64, c: f64, log_t: f64) -> f64 {
    // 2 sin(πct) / (π t log T) = (2c / log T) · sinc(πct)
    2.0 * c / log_t * sinc_unchecked(PI * c * t)
}

/// The normalized envelope `G(φ)`.
pub fn envelope(phi: f64, params: &BoundParams, quad: &QuadratureSpec) -> Result<f64> {
    params.check_phi(phi)?;
    let BoundParams { c, beta, .. } = *params;
    let linear = 2.0 * beta * c * (params.phi_max() - phi);
    let si = sine_integral(PI * c * phi, quad)?;
    Ok(linear + 2.0 * params.alpha() / PI * si)
}

/// Sign of `dG/dφ = 2c(α·sinc(πcφ) - β)`. Note `w` decreases as `φ` grows,
/// so this is the opposite of the sign of `dG/dw`.
pub fn derivative_sign(phi: f64, params: &BoundParams) -> Result<Sign> {
    params.check_phi(phi)?;
    let d = derivative_factor(phi, params);
    Ok(if d > 0.0 {
        Sign::Positive
    } else if d < 0.0 {
        Sign::Negative
    } else {
        Sign::Zero
    })
}

#[inline]
pub(crate) fn derivative_factor(phi: f64, params: &BoundParams) -> f64 {
    params.alpha() * sinc_unchecked(PI * params.c * phi) - params.beta
}

/// Solves `sinc(πcφ₀) = 4β²` by bisection on `[0, 1-δ]`.
///
/// `sinc` is strictly decreasing on `[0, πc(1-δ)] ⊂ [0, π)`, so the root is
/// unique when `4β² >= sinc(πc(1-δ))`; otherwise `NoCriticalPoint`.
pub fn solve_phi0(params: &BoundParams, tol: f64) -> Result<PhiRoot> {
    if params.beta > 0.5 {
        return Err(Error::Case { beta: params.beta });
    }
    if !(tol > 0.0) {
        return domain(format!("phi tolerance must be positive, got {tol}"));
    }
    let target = 4.0 * params.beta * params.beta;
    let scale = PI * params.c;
    if params.beta == 0.5 {
        return Ok(PhiRoot::Interior(CriticalPoint { phi0: 0.0, residual: 0.0, bracket: (0.0, 0.0) }));
    }
    let hi = params.phi_max();
    if sinc_unchecked(scale * hi) > target {
        return Ok(PhiRoot::NoCriticalPoint);
    }
    let (lo, hi, _) = bisect(0.0, hi, tol, |phi| Ok(sinc_unchecked(scale * phi) >= target))?;
    let phi0 = 0.5 * (lo + hi);
    Ok(PhiRoot::Interior(CriticalPoint {
        phi0,
        residual: (sinc_unchecked(scale * phi0) - target).abs(),
        bracket: (lo, hi),
    }))
}

/// Maximum of `G` over `[0, 1-δ]` and the resulting `h_upper = c + max G`.
pub fn evaluate_bound(params: &BoundParams, config: &BoundConfig) -> Result<BoundEvaluation> {
    let (g_max, maximizer) = match params.case() {
        Case::Case1 => (2.0 * params.beta * params.c * params.phi_max(), Maximizer::EndpointPhiZero),
        Case::Case2 => match solve_phi0(params, config.phi_tol)? {
            PhiRoot::Interior(cp) => (envelope(cp.phi0, params, &config.quad)?, Maximizer::Interior(cp.phi0)),
            PhiRoot::NoCriticalPoint => {
                let at_zero = envelope(0.0, params, &config.quad)?;
                let at_one = envelope(params.phi_max(), params, &config.quad)?;
                if at_one > at_zero {
                    (at_one, Maximizer::EndpointPhiOne)
                } else {
                    (at_zero, Maximizer::EndpointPhiZero)
                }
            }
        },
    };
    Ok(BoundEvaluation { params: *params, g_max, h_upper: params.c + g_max, maximizer, case: params.case() })
}
