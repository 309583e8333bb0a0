use rayon::prelude::*;
use serde::Serialize;

use super::{evaluate_bound, BoundConfig, BoundEvaluation, BoundParams};
use crate::error::{domain, Error, Result};
use crate::search::{bisect, golden_section};

/// Outcome of [`optimize_beta`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaOptimum {
    /// Best β on the lattice `tol·ℤ` inside the search range.
    pub beta: f64,
    pub eval: BoundEvaluation,
    /// Continuous golden-section estimate before snapping to the lattice.
    pub refined_beta: f64,
    pub refined_h_upper: f64,
    pub evaluations: usize,
}

/// Critical `c` with its witness `(β*, φ*, h*)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub c_star: f64,
    pub beta_star: f64,
    pub phi_star: f64,
    pub h_star: f64,
    pub beta_evals: usize,
    pub c_iterations: usize,
}

fn h_at(c: f64, beta: f64, config: &BoundConfig) -> Result<BoundEvaluation> {
    evaluate_bound(&BoundParams::with_full_range(c, beta)?, config)
}

/// Lowest-index minimum; keeps parallel reductions order independent.
fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

/// Minimizes `h_upper(c, β)` over `β ∈ range` (with `δ = 0`).
///
/// A coarse grid of `config.beta_grid` points locates the basin, golden
/// section refines it to width `tol`, and the two lattice points `k·tol`
/// adjacent to the refined estimate are compared to pick the reported β.
pub fn optimize_beta(c: f64, range: (f64, f64), tol: f64, config: &BoundConfig) -> Result<BetaOptimum> {
    config.validate()?;
    let (lo, hi) = range;
    if !(lo > 0.0 && lo < hi && hi <= 0.5) {
        return domain(format!("beta range must satisfy 0 < lo < hi <= 1/2, got [{lo}, {hi}]"));
    }
    if !(tol > 0.0) {
        return domain(format!("beta tolerance must be positive, got {tol}"));
    }
    BoundParams::with_full_range(c, lo)?;

    let n = config.beta_grid;
    let grid: Vec<f64> =
        (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect();
    let values =
        grid.par_iter().map(|&beta| h_at(c, beta, config).map(|e| e.h_upper)).collect::<Result<Vec<_>>>()?;
    let best = argmin(&values);
    let mut evaluations = n;

    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(n - 1)];
    let (refined_beta, refined_h_upper, golden_evals) =
        golden_section(a, b, tol, |beta| h_at(c, beta, config).map(|e| e.h_upper))?;
    evaluations += golden_evals;

    let scale = (1.0 / tol).round();
    let on_lattice = |k: f64| if (scale * tol - 1.0).abs() < 1e-12 { k / scale } else { k * tol };
    let k = (refined_beta / tol).floor();
    let mut candidates: Vec<f64> =
        [on_lattice(k), on_lattice(k + 1.0)].into_iter().filter(|&beta| beta >= lo && beta <= hi).collect();
    if candidates.is_empty() {
        candidates.push(refined_beta);
    }
    let mut chosen: Option<BoundEvaluation> = None;
    for beta in candidates {
        let e = h_at(c, beta, config)?;
        evaluations += 1;
        if chosen.is_none_or(|best| e.h_upper < best.h_upper) {
            chosen = Some(e);
        }
    }
    let eval = chosen.expect("at least one candidate");
    Ok(BetaOptimum { beta: eval.params.beta, eval, refined_beta, refined_h_upper, evaluations })
}

/// Largest `c` in `bracket` for which `min_β h_upper(c, β) < 1`, by bisection.
///
/// The trace of `(c, min h)` pairs is checked for monotonicity afterwards;
/// an inconsistent trace aborts with [`Error::NonMonotone`].
pub fn find_critical_c(bracket: (f64, f64), tol: f64, config: &BoundConfig) -> Result<OptimizationResult> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && lo < hi && hi < 1.0) {
        return domain(format!("c bracket must satisfy 0 < lo < hi < 1, got [{lo}, {hi}]"));
    }
    if !(tol > 0.0) {
        return domain(format!("c tolerance must be positive, got {tol}"));
    }
    let mut beta_evals = 0;
    let mut trace: Vec<(f64, f64)> = Vec::new();
    let mut minimize = |c: f64| -> Result<BetaOptimum> {
        let opt = optimize_beta(c, config.beta_range, config.beta_tol, config)?;
        beta_evals += opt.evaluations;
        trace.push((c, opt.eval.h_upper));
        Ok(opt)
    };

    let at_lo = minimize(lo)?;
    let at_hi = minimize(hi)?;
    if !(at_lo.eval.h_upper < 1.0 && at_hi.eval.h_upper >= 1.0) {
        return Err(Error::Bracket {
            lo,
            hi,
            f_lo: at_lo.eval.h_upper - 1.0,
            f_hi: at_hi.eval.h_upper - 1.0,
        });
    }
    let mut witness = at_lo;
    let (c_star, _, c_iterations) = bisect(lo, hi, tol, |c| {
        let opt = minimize(c)?;
        let below = opt.eval.h_upper < 1.0;
        if below {
            witness = opt;
        }
        Ok(below)
    })?;

    trace.sort_by(|a, b| a.0.total_cmp(&b.0));
    for pair in trace.windows(2) {
        let ((c_low, h_low), (c_high, h_high)) = (pair[0], pair[1]);
        // Each h is a bounded-precision minimum; allow rounding-level noise.
        if h_low > h_high + 1e-12 {
            return Err(Error::NonMonotone { c_low, h_low, c_high, h_high });
        }
    }

    debug_assert_eq!(witness.eval.params.c, c_star);
    Ok(OptimizationResult {
        c_star,
        beta_star: witness.beta,
        phi_star: witness.eval.maximizer.phi(&witness.eval.params),
        h_star: witness.eval.h_upper,
        beta_evals,
        c_iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound::Maximizer;

    #[test]
    fn argmin_prefers_lowest_index() {
        assert_eq!(argmin(&[3.0, 1.0, 1.0, 2.0]), 1);
    }

    #[test]
    fn lattice_witness_at_published_optimum() {
        let cfg = BoundConfig::default();
        let opt = optimize_beta(0.5042, (0.3, 0.5), 1e-3, &cfg).unwrap();
        assert_eq!(opt.beta, 0.476);
        assert!(matches!(opt.eval.maximizer, Maximizer::Interior(_)));
        assert!(opt.refined_h_upper <= opt.eval.h_upper + 1e-15);
    }

    #[test]
    fn continuous_optimum() {
        let cfg = BoundConfig::default();
        let opt = optimize_beta(0.5042, (0.3, 0.5), 1e-9, &cfg).unwrap();
        // mpmath: envelope-theorem root of ∂h/∂β = 0
        assert!((opt.beta - 0.475_703_395_6).abs() < 2e-8);
        assert!((opt.eval.h_upper - 0.999_992_516_896_696_5).abs() < 1e-12);
    }

    #[test]
    fn case2_beats_case1_at_one_half() {
        let cfg = BoundConfig::default();
        let opt = optimize_beta(0.5, (0.3, 0.5), 1e-6, &cfg).unwrap();
        assert!(opt.eval.h_upper < 1.0);
        assert!(opt.beta < 0.5);
    }

    #[test]
    fn bad_ranges_are_rejected() {
        let cfg = BoundConfig::default();
        assert!(optimize_beta(0.5, (0.4, 0.3), 1e-3, &cfg).is_err());
        assert!(optimize_beta(0.5, (0.0, 0.3), 1e-3, &cfg).is_err());
        assert!(optimize_beta(0.5, (0.3, 0.6), 1e-3, &cfg).is_err());
        assert!(optimize_beta(0.5, (0.3, 0.5), 0.0, &cfg).is_err());
    }

    #[test]
    fn bracket_below_threshold_is_an_error() {
        let cfg = BoundConfig::default();
        assert!(matches!(find_critical_c((0.4, 0.45), 1e-4, &cfg), Err(Error::Bracket { .. })));
    }
}
