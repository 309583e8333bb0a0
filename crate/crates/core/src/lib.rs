//! Numerical limits of the Montgomery–Odlyzko method for gaps between zeros
//! of the Riemann zeta function.
//!
//! - [`special`]: `sinc`, the sine integral and the large-gap integrals.
//! - [`bound`]: the envelope `G(φ)`, its critical point, the β optimizer,
//!   the bisection for the critical `c` and the dense-grid verifier.
//! - [`large_gap`]: lower bounds for `h(c)` and their thresholds.
//! - [`sieve`]: von Mangoldt tables and direct evaluation of the prime-power
//!   sums behind the analytic bound.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bound;
pub mod error;
pub mod large_gap;
pub mod quadrature;
pub mod reference;
mod search;
pub mod sieve;
pub mod special;

pub use bound::{
    cgg_comparison_bound, derivative_sign, envelope, evaluate_bound, find_critical_c, g_kernel,
    optimize_beta, solve_phi0, verify_interval, BetaOptimum, BoundConfig, BoundEvaluation, BoundParams, Case,
    CriticalPoint, IntervalReport, Maximizer, OptimizationResult, PhiRoot, Sign,
};
pub use error::{Error, Result};
pub use large_gap::{find_large_gap_threshold, h_lower, LargeGapVariant};
pub use quadrature::{integrate, Integral, QuadratureSpec};
pub use sieve::{
    build_sieve, chain_audit, empirical_ratio, ChainAudit, CoefficientScheme, DivisorReport, EmpiricalRun,
    SieveTable,
};
pub use special::{abs_sinc_integral, sinc, sinc_squared_integral, sine_integral};
