use rayon::prelude::*;
use serde::Serialize;

use super::{derivative_factor, envelope, BoundParams};
use crate::error::{domain, ensure_finite, Result};
use crate::quadrature::QuadratureSpec;

/// Dense-grid certificate for `c + G(φ) < 1` on `[0, 1-δ]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalReport {
    pub params: BoundParams,
    pub grid_size: usize,
    pub max_value: f64,
    pub argmax_phi: f64,
    pub argmax_index: usize,
    /// `α·sinc(πcφ) - β` strictly decreases along the grid.
    pub derivative_strictly_decreasing: bool,
    /// Sign changes of `dG/dφ` along the grid (at most one expected).
    pub derivative_sign_changes: usize,
    pub pass: bool,
}

pub fn verify_interval(
    params: &BoundParams,
    grid_size: usize,
    quad: &QuadratureSpec,
) -> Result<IntervalReport> {
    if grid_size < 2 {
        return domain(format!("grid_size must be at least 2, got {grid_size}"));
    }
    let top = params.phi_max();
    let last = grid_size - 1;
    let phi_at = |i: usize| if i == last { top } else { top * i as f64 / last as f64 };

    let samples = (0..grid_size)
        .into_par_iter()
        .map(|i| {
            let phi = phi_at(i);
            Ok((params.c + envelope(phi, params, quad)?, derivative_factor(phi, params)))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;

    let mut argmax_index = 0;
    for (i, s) in samples.iter().enumerate() {
        if s.0 > samples[argmax_index].0 {
            argmax_index = i;
        }
    }
    let derivative_strictly_decreasing = samples.windows(2).all(|w| w[1].1 < w[0].1);
    let mut derivative_sign_changes = 0;
    let mut previous = 0.0f64;
    for &(_, d) in &samples {
        if d != 0.0 {
            if previous != 0.0 && (d > 0.0) != (previous > 0.0) {
                derivative_sign_changes += 1;
            }
            previous = d;
        }
    }

    let max_value = samples[argmax_index].0;
    Ok(IntervalReport {
        params: *params,
        grid_size,
        max_value,
        argmax_phi: phi_at(argmax_index),
        argmax_index,
        derivative_strictly_decreasing,
        derivative_sign_changes,
        pass: max_value < 1.0 && derivative_strictly_decreasing && derivative_sign_changes <= 1,
    })
}

/// The comparison bound `c + 2c·max(α, β)` obtained when `S₁` is bounded
/// through `g <= 2c / log T` directly; minimal (`= 2c`) at `α = β = 1/2`.
pub fn cgg_comparison_bound(c: f64, alpha: f64, beta: f64) -> Result<f64> {
    ensure_finite("c", c)?;
    ensure_finite("alpha", alpha)?;
    ensure_finite("beta", beta)?;
    if !(alpha > 0.0 && beta > 0.0) {
        return domain("alpha and beta must be positive");
    }
    if 4.0 * alpha * beta < 1.0 - 1e-12 {
        return domain(format!("4·alpha·beta = {} < 1 breaks the AM-GM split", 4.0 * alpha * beta));
    }
    Ok(c + 2.0 * c * alpha.max(beta))
}
