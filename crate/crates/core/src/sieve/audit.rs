use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::{CoefficientScheme, SieveTable};
use crate::bound::{evaluate_bound, g_kernel_unchecked, BoundConfig, BoundParams};
use crate::error::{domain, ensure_finite, Error, Result};
use crate::special::sine_integral;

/// Per-`k` data kept for the chain audit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KTerm {
    pub k: usize,
    /// `|b_k|² / k`
    pub weight: f64,
    /// `H(y/k)`
    pub h: f64,
}

/// Direct double sums for one `(T, δ, c, b)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalRun {
    pub t: f64,
    pub y: f64,
    pub log_t: f64,
    pub c: f64,
    pub delta: f64,
    pub scheme: String,
    /// `Σ_{kn<=y} |b_k||b_kn| g(n) Λ(n) / (kn)`
    pub s: f64,
    /// `Σ_k (|b_k|²/k) H(y/k)`
    pub s1: f64,
    /// `Σ_{kn<=y} (|b_kn|²/(kn)) g(n) Λ(n)`
    pub s2: f64,
    /// `Σ_{k<=y} |b_k|²/k`
    pub norm: f64,
    pub ratio: f64,
    #[serde(skip)]
    pub terms: Vec<KTerm>,
}

pub fn empirical_ratio(
    table: &SieveTable,
    t: f64,
    delta: f64,
    c: f64,
    scheme: &CoefficientScheme,
) -> Result<EmpiricalRun> {
    ensure_finite("T", t)?;
    if !(t > 1.0) {
        return domain(format!("T must exceed 1, got {t}"));
    }
    if !(0.0..1.0).contains(&delta) {
        return domain(format!("delta must lie in [0, 1), got {delta}"));
    }
    if !(c > 0.0 && c < 1.0) {
        return domain(format!("c must lie in (0, 1), got {c}"));
    }
    let log_t = t.ln();
    let y = t.powf(1.0 - delta);
    let top = y.floor() as usize;
    if top > table.limit() {
        return domain(format!("y = {y} exceeds the sieve limit {}", table.limit()));
    }
    scheme.check(top)?;

    // g(n) Λ(n) / n over prime powers n <= y; g > 0 here so |g| = g.
    let weights: Vec<(usize, f64)> = table
        .prime_powers(top)
        .map(|(n, lambda)| {
            let tn = ((n as f64).ln() / log_t).min(1.0);
            (n, g_kernel_unchecked(tn, c, log_t) * lambda / n as f64)
        })
        .collect();

    let per_k: Vec<(f64, f64, f64, KTerm)> = (1..=top)
        .into_par_iter()
        .map(|k| {
            let bk = scheme.magnitude(k);
            let limit = top / k;
            let (mut cross, mut h, mut diag) = (0.0, 0.0, 0.0);
            for &(n, w) in weights.iter().take_while(|(n, _)| *n <= limit) {
                let bkn = scheme.magnitude(k * n);
                cross += bkn * w;
                h += w;
                diag += bkn * bkn * w;
            }
            let kf = k as f64;
            let weight = bk * bk / kf;
            (bk * cross / kf, weight * h, diag / kf, KTerm { k, weight, h })
        })
        .collect();

    let (mut s, mut s1, mut s2, mut norm) = (0.0, 0.0, 0.0, 0.0);
    let mut terms = Vec::new();
    for (sk, s1k, s2k, term) in per_k {
        s += sk;
        s1 += s1k;
        s2 += s2k;
        norm += term.weight;
        if term.weight != 0.0 {
            terms.push(term);
        }
    }
    Ok(EmpiricalRun {
        t,
        y,
        log_t,
        c,
        delta,
        scheme: scheme.label().to_string(),
        s,
        s1,
        s2,
        norm,
        ratio: s / norm,
        terms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `(rhs - lhs) / |rhs|`; nonnegative when the inequality holds.
    pub relative_slack: f64,
    pub pass: bool,
}

impl LinkCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        let relative_slack = if rhs != 0.0 {
            (rhs - lhs) / rhs.abs()
        } else if lhs == 0.0 {
            0.0
        } else {
            f64::NEG_INFINITY
        };
        Self { lhs, rhs, relative_slack, pass: relative_slack >= -EXACT_LINK_TOLERANCE }
    }
}

/// Relative rounding allowance for the exact inequalities.
pub const EXACT_LINK_TOLERANCE: f64 = 1e-12;

/// Link-by-link comparison of an [`EmpiricalRun`] with the analytic chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainAudit {
    pub alpha: f64,
    pub beta: f64,
    /// (i) `S <= αS₁ + βS₂`
    pub am_gm: LinkCheck,
    /// (ii) `S₂ <= (2c/log T) Σ (|b_k|²/k) log k`
    pub divisor_bound: LinkCheck,
    /// (iii) `max_k |H(y/k) - (2/π) Si(πc log(y/k)/log T)|`
    pub s1_max_error: f64,
    /// (iii) the same errors averaged with weights `|b_k|²/k`
    pub s1_mean_error: f64,
    /// `s1_mean_error · log T`
    pub s1_error_constant: f64,
    /// (iv) `(αS₁ + βS₂)/norm` minus the weighted mean of `G(w = k)`
    pub envelope_slack: f64,
    /// `envelope_slack · log T`
    pub envelope_slack_constant: f64,
    /// `max G` from the asymptotic evaluator
    pub g_max: f64,
    /// `g_max - ratio`
    pub ratio_margin: f64,
    /// `ratio <= g_max + max(envelope_slack, 0)`
    pub envelope_pass: bool,
}

/// Verifies the inequality chain for `run` at the weights of `params`.
///
/// Links (i) and (ii) are unconditional; a violation beyond rounding is an
/// [`Error::Audit`]. Links (iii) and (iv) carry `O(1/log T)` terms and are
/// reported as observed magnitudes.
pub fn chain_audit(run: &EmpiricalRun, params: &BoundParams, config: &BoundConfig) -> Result<ChainAudit> {
    if params.c != run.c || params.delta != run.delta {
        return domain(format!(
            "run (c = {}, delta = {}) and params (c = {}, delta = {}) disagree",
            run.c, run.delta, params.c, params.delta
        ));
    }
    let (alpha, beta) = (params.alpha(), params.beta);
    let am_gm = LinkCheck::new(run.s, alpha * run.s1 + beta * run.s2);

    let log_weighted: f64 = run.terms.iter().map(|t| t.weight * (t.k as f64).ln()).sum();
    let divisor_bound = LinkCheck::new(run.s2, 2.0 * run.c / run.log_t * log_weighted);

    for (name, link) in [("S <= aS1 + bS2", &am_gm), ("S2 <= divisor bound", &divisor_bound)] {
        if !link.pass {
            return Err(Error::Audit(format!(
                "{name} violated: lhs = {}, rhs = {}, relative slack = {}",
                link.lhs, link.rhs, link.relative_slack
            )));
        }
    }

    let top = params.phi_max();
    let scale = PI * run.c;
    let per_term = run
        .terms
        .par_iter()
        .map(|term| {
            let phi = (top - (term.k as f64).ln() / run.log_t).clamp(0.0, top);
            let si = sine_integral(scale * phi, &config.quad)?;
            let approx = 2.0 / PI * si;
            let g = 2.0 * beta * run.c * (top - phi) + 2.0 * alpha / PI * si;
            Ok(((term.h - approx).abs(), g))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;

    let (mut s1_max_error, mut weighted_error, mut envelope_mean) = (0.0f64, 0.0, 0.0);
    for (term, (err, g)) in run.terms.iter().zip(&per_term) {
        s1_max_error = s1_max_error.max(*err);
        weighted_error += term.weight * err;
        envelope_mean += term.weight * g;
    }
    let s1_mean_error = weighted_error / run.norm;
    envelope_mean /= run.norm;
    let envelope_slack = am_gm.rhs / run.norm - envelope_mean;
    let g_max = evaluate_bound(params, config)?.g_max;

    Ok(ChainAudit {
        alpha,
        beta,
        am_gm,
        divisor_bound,
        s1_max_error,
        s1_mean_error,
        s1_error_constant: s1_mean_error * run.log_t,
        envelope_slack,
        envelope_slack_constant: envelope_slack * run.log_t,
        g_max,
        ratio_margin: g_max - run.ratio,
        envelope_pass: run.ratio <= g_max + envelope_slack.max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::build_sieve;

    #[test]
    fn first_coefficient_only_collapses() {
        let table = build_sieve(1000).unwrap();
        let scheme = CoefficientScheme::first_only(1000);
        let run = empirical_ratio(&table, 1000.0, 0.0, 0.5, &scheme).unwrap();
        assert_eq!(run.norm, 1.0);
        assert_eq!(run.s, 0.0);
        assert_eq!(run.s2, 0.0);
        let h = table.h_direct(1000.0, 0.5, 1000f64.ln()).unwrap();
        assert!((run.s1 - h).abs() < 1e-15);
        let params = BoundParams::new(0.5, 0.5, 0.0).unwrap();
        let audit = chain_audit(&run, &params, &BoundConfig::default()).unwrap();
        assert!(audit.am_gm.pass && audit.divisor_bound.pass);
    }

    #[test]
    fn short_scheme_is_rejected() {
        let table = build_sieve(1000).unwrap();
        let scheme = CoefficientScheme::Custom(vec![1.0; 10]);
        assert!(empirical_ratio(&table, 1000.0, 0.0, 0.5, &scheme).is_err());
        assert!(empirical_ratio(&table, 2000.0, 0.0, 0.5, &CoefficientScheme::Ones).is_err());
    }

    #[test]
    fn mismatched_params_are_rejected() {
        let table = build_sieve(200).unwrap();
        let run = empirical_ratio(&table, 200.0, 0.0, 0.5, &CoefficientScheme::Ones).unwrap();
        let params = BoundParams::new(0.4, 0.5, 0.0).unwrap();
        assert!(chain_audit(&run, &params, &BoundConfig::default()).is_err());
    }

    #[test]
    fn delta_shrinks_y() {
        let table = build_sieve(1000).unwrap();
        let run = empirical_ratio(&table, 1000.0, 1.0 / 3.0, 0.5, &CoefficientScheme::Ones).unwrap();
        assert!((run.y - 100.0).abs() < 1e-9);
        assert_eq!(run.terms.len(), run.y.floor() as usize);
    }
}
