//! Scalar kernels: `sinc`, the sine integral, and the two singular integrals
//! entering the large-gap lower bounds.

use std::f64::consts::PI;

use crate::error::{domain, ensure_finite, Result};
use crate::quadrature::{integrate, QuadratureSpec};

/// Below this the Maclaurin form of `sinc` is used.
const SINC_SERIES_CUTOFF: f64 = 0.1;

/// Crossover between the Maclaurin series and quadrature for `Si`.
pub const SI_SERIES_CROSSOVER: f64 = 2.0;
const SI_SERIES_TERMS: usize = 12;

/// `sin(x) / x`, with the limit value 1 at the origin.
pub fn sinc(x: f64) -> Result<f64> {
    ensure_finite("sinc argument", x)?;
    Ok(sinc_unchecked(x))
}

#[inline]
pub(crate) fn sinc_unchecked(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SINC_SERIES_CUTOFF {
        // 1 - x²/3! + x⁴/5! - ... ; truncation below 1e-21 on the cutoff.
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0))))
    } else {
        x.sin() / x
    }
}

fn si_series(x: f64) -> f64 {
    // Si(x) = Σ (-1)^k x^(2k+1) / ((2k+1)(2k+1)!)
    let x2 = x * x;
    let mut term = x;
    let mut sum = 0.0;
    for k in 0..SI_SERIES_TERMS {
        let n = (2 * k + 1) as f64;
        sum += term / n;
        term *= -x2 / ((n + 1.0) * (n + 2.0));
    }
    sum
}

/// The sine integral `Si(x) = ∫₀ˣ sinc(v) dv` for `x >= 0`.
pub fn sine_integral(x: f64, spec: &QuadratureSpec) -> Result<f64> {
    ensure_finite("sine_integral argument", x)?;
    if x < 0.0 {
        return domain(format!("sine_integral needs x >= 0, got {x}"));
    }
    if x <= SI_SERIES_CROSSOVER {
        return Ok(si_series(x));
    }
    let tail = integrate(sinc_unchecked, &[SI_SERIES_CROSSOVER, x], spec)?;
    Ok(si_series(SI_SERIES_CROSSOVER) + tail.value)
}

/// `∫₀¹ |sin(πcv)| / v dv`.
///
/// After `u = πcv` this is `∫₀^{πc} |sinc(u)| du`; the first lobe is
/// `Si(min(π, πc))` and every further lobe `[kπ, (k+1)π]` has a fixed sign,
/// so the kinks at `v = k/c` become panel boundaries.
pub fn abs_sinc_integral(c: f64, spec: &QuadratureSpec) -> Result<f64> {
    ensure_finite("abs_sinc_integral argument", c)?;
    if c <= 0.0 {
        return domain(format!("abs_sinc_integral needs c > 0, got {c}"));
    }
    let upper = PI * c;
    if c <= 1.0 {
        return sine_integral(upper, spec);
    }
    let first = sine_integral(PI, spec)?;
    let mut points = vec![PI];
    let mut k = 2.0;
    while k * PI < upper {
        points.push(k * PI);
        k += 1.0;
    }
    points.push(upper);
    let rest = integrate(|u| sinc_unchecked(u).abs(), &points, spec)?;
    Ok(first + rest.value)
}

/// `∫₀ˣ sinc(v)² dv`, nondecreasing in `x` and bounded by `π/2`.
pub fn sinc_squared_integral(x: f64, spec: &QuadratureSpec) -> Result<f64> {
    ensure_finite("sinc_squared_integral argument", x)?;
    if x < 0.0 {
        return domain(format!("sinc_squared_integral needs x >= 0, got {x}"));
    }
    let mut points = vec![0.0];
    let mut k = 1.0;
    while k * PI < x {
        points.push(k * PI);
        k += 1.0;
    }
    points.push(x);
    let r = integrate(
        |v| {
            let s = sinc_unchecked(v);
            s * s
        },
        &points,
        spec,
    )?;
    Ok(r.value)
}
