use std::path::Path;

use gapbound_core::reference as published;
use gapbound_core::{
    build_sieve, chain_audit, empirical_ratio, evaluate_bound, find_critical_c, find_large_gap_threshold,
    h_lower, optimize_beta, verify_interval, BoundParams, CoefficientScheme, LargeGapVariant, Maximizer,
    SieveTable,
};

use crate::output::{Cell, Report};
use crate::{Failure, SchemeArg, Tolerances};

fn maximizer_label(m: &Maximizer) -> &'static str {
    match m {
        Maximizer::Interior(_) => "interior",
        Maximizer::EndpointPhiZero => "endpoint_phi_zero",
        Maximizer::EndpointPhiOne => "endpoint_phi_one",
    }
}

pub fn critical_c(bracket: (f64, f64), tol: &Tolerances) -> Result<Report, Failure> {
    let config = tol.bound_config();
    let result = find_critical_c(bracket, tol.tol_c, &config)?;
    let mut report = Report::new(
        "critical-c",
        vec!["c_star", "beta_star", "phi_star", "h_star", "beta_evals", "c_iterations"],
    );
    report.summary("c_lo", bracket.0);
    report.summary("c_hi", bracket.1);
    report.summary("tol_c", tol.tol_c);
    report.summary("tol_beta", tol.tol_beta);
    report.row(vec![
        result.c_star.into(),
        result.beta_star.into(),
        result.phi_star.into(),
        result.h_star.into(),
        result.beta_evals.into(),
        result.c_iterations.into(),
    ]);
    Ok(report)
}

pub fn scan(c: f64, beta_min: f64, beta_max: f64, steps: usize, tol: &Tolerances) -> Result<Report, Failure> {
    if steps < 2 {
        return Err(Failure::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    if !(beta_min > 0.0 && beta_min < beta_max && beta_max.is_finite()) {
        return Err(Failure::Usage(format!(
            "need 0 < --beta-min < --beta-max, got [{beta_min}, {beta_max}]"
        )));
    }
    let config = tol.bound_config();
    let mut report = Report::new("scan", vec!["beta", "phi0", "maximizer", "g_max", "h_upper"]);
    report.summary("c", c);
    report.summary("steps", steps);
    let mut best: Option<(f64, f64)> = None;
    for i in 0..steps {
        let beta = if i + 1 == steps {
            beta_max
        } else {
            beta_min + (beta_max - beta_min) * i as f64 / (steps - 1) as f64
        };
        let e = evaluate_bound(&BoundParams::with_full_range(c, beta)?, &config)?;
        let phi0 = match e.maximizer {
            Maximizer::Interior(phi) => Some(phi),
            _ => None,
        };
        if best.is_none_or(|(_, h)| e.h_upper < h) {
            best = Some((beta, e.h_upper));
        }
        report.row(vec![
            beta.into(),
            phi0.into(),
            maximizer_label(&e.maximizer).into(),
            e.g_max.into(),
            e.h_upper.into(),
        ]);
    }
    let (beta, h) = best.expect("steps >= 2");
    report.summary("best_beta", beta);
    report.summary("best_h_upper", h);
    Ok(report)
}

pub fn verify(c: f64, beta: f64, delta: f64, grid: usize, tol: &Tolerances) -> Result<Report, Failure> {
    if grid < 2 {
        return Err(Failure::Usage(format!("--grid must be at least 2, got {grid}")));
    }
    let params = BoundParams::new(c, beta, delta)?;
    let r = verify_interval(&params, grid, &tol.quad())?;
    let mut report = Report::new(
        "verify",
        vec![
            "c",
            "beta",
            "delta",
            "grid",
            "max_value",
            "argmax_phi",
            "derivative_strictly_decreasing",
            "derivative_sign_changes",
            "pass",
        ],
    );
    if grid == 2 {
        report.warnings.push("grid of 2 points checks the endpoints only".into());
    }
    report.pass = r.pass;
    report.summary("max_value", r.max_value);
    report.summary("argmax_phi", r.argmax_phi);
    report.row(vec![
        c.into(),
        beta.into(),
        delta.into(),
        grid.into(),
        r.max_value.into(),
        r.argmax_phi.into(),
        r.derivative_strictly_decreasing.into(),
        r.derivative_sign_changes.into(),
        r.pass.into(),
    ]);
    Ok(report)
}

pub fn large_gaps(
    variants: &[LargeGapVariant],
    bracket: Option<(f64, f64)>,
    tol: &Tolerances,
) -> Result<Report, Failure> {
    let quad = tol.quad();
    let mut report = Report::new("large-gaps", vec!["variant", "c", "h_lower"]);
    for &variant in variants {
        let bracket = bracket.unwrap_or_else(|| variant.default_bracket());
        let threshold = find_large_gap_threshold(variant, bracket, tol.tol_threshold, &quad)?;
        report.summary(
            match variant {
                LargeGapVariant::V1 => "threshold_v1",
                LargeGapVariant::V2 => "threshold_v2",
            },
            threshold,
        );
        for k in -3i32..=3 {
            let c = threshold + 0.01 * f64::from(k);
            report.row(vec![variant.to_string().into(), c.into(), h_lower(c, variant, &quad)?.into()]);
        }
    }
    Ok(report)
}

fn load_or_build_sieve(limit: usize, cache: Option<&Path>) -> Result<SieveTable, Failure> {
    if let Some(path) = cache {
        if path.exists() {
            let table = SieveTable::load(path)?;
            if table.limit() >= limit {
                return Ok(table);
            }
        }
        let table = build_sieve(limit)?;
        table.save(path)?;
        return Ok(table);
    }
    Ok(build_sieve(limit)?)
}

pub fn oracle(
    t_exp: u32,
    c: f64,
    scheme: SchemeArg,
    delta: f64,
    betas: &[f64],
    cache: Option<&Path>,
    tol: &Tolerances,
) -> Result<Report, Failure> {
    if !(1..=7).contains(&t_exp) {
        return Err(Failure::Usage(format!("--t-exp must lie in 1..=7, got {t_exp}")));
    }
    let t = 10f64.powi(t_exp as i32);
    let limit = t.powf(1.0 - delta).floor() as usize;
    let table = load_or_build_sieve(limit.max(2), cache)?;
    let coefficients = match scheme {
        SchemeArg::Ones => CoefficientScheme::Ones,
        SchemeArg::B1Only => CoefficientScheme::first_only(limit.max(1)),
    };
    let run = empirical_ratio(&table, t, delta, c, &coefficients)?;
    let config = tol.bound_config();

    let mut report = Report::new(
        "oracle",
        vec![
            "beta",
            "alpha",
            "am_gm_lhs",
            "am_gm_rhs",
            "am_gm_relative_slack",
            "divisor_lhs",
            "divisor_rhs",
            "divisor_relative_slack",
            "s1_max_error",
            "s1_mean_error",
            "s1_error_constant",
            "envelope_slack",
            "envelope_slack_constant",
            "g_max",
            "ratio_margin",
            "exact_links_pass",
        ],
    );
    report.summary("t", t);
    report.summary("y", run.y);
    report.summary("c", c);
    report.summary("delta", delta);
    report.summary(
        "scheme",
        match scheme {
            SchemeArg::Ones => "ones",
            SchemeArg::B1Only => "b1-only",
        },
    );
    report.summary("s", run.s);
    report.summary("s1", run.s1);
    report.summary("s2", run.s2);
    report.summary("norm", run.norm);
    report.summary("ratio", run.ratio);

    for &beta in betas {
        let params = BoundParams::new(c, beta, delta)?;
        let audit = chain_audit(&run, &params, &config)?;
        let exact = audit.am_gm.pass && audit.divisor_bound.pass;
        report.pass &= exact && audit.envelope_pass;
        report.row(vec![
            beta.into(),
            audit.alpha.into(),
            audit.am_gm.lhs.into(),
            audit.am_gm.rhs.into(),
            audit.am_gm.relative_slack.into(),
            audit.divisor_bound.lhs.into(),
            audit.divisor_bound.rhs.into(),
            audit.divisor_bound.relative_slack.into(),
            audit.s1_max_error.into(),
            audit.s1_mean_error.into(),
            audit.s1_error_constant.into(),
            audit.envelope_slack.into(),
            audit.envelope_slack_constant.into(),
            audit.g_max.into(),
            audit.ratio_margin.into(),
            exact.into(),
        ]);
    }
    Ok(report)
}

pub fn reproduce(tol: &Tolerances) -> Result<Report, Failure> {
    let config = tol.bound_config();
    let quad = tol.quad();
    let critical = find_critical_c(published::C_BRACKET, tol.tol_c, &config)?;
    let witness = optimize_beta(published::C0, config.beta_range, config.beta_tol, &config)?;
    let phi = witness.eval.maximizer.phi(&witness.eval.params);
    let v1 = find_large_gap_threshold(
        LargeGapVariant::V1,
        LargeGapVariant::V1.default_bracket(),
        tol.tol_threshold,
        &quad,
    )?;
    let v2 = find_large_gap_threshold(
        LargeGapVariant::V2,
        LargeGapVariant::V2.default_bracket(),
        tol.tol_threshold,
        &quad,
    )?;

    let mut report = Report::new("reproduce", vec!["constant", "computed", "reference", "tolerance", "pass"]);
    let rows = [
        ("c0", critical.c_star, published::C0, published::C0_TOL),
        ("beta0", witness.beta, published::BETA0, published::BETA0_TOL),
        ("phi0", phi, published::PHI0, published::PHI0_TOL),
        ("h_c0", witness.eval.h_upper, published::H_C0, published::H_C0_TOL),
        ("threshold_v1", v1, published::THRESHOLD_V1, published::THRESHOLD_TOL),
        ("threshold_v2", v2, published::THRESHOLD_V2, published::THRESHOLD_TOL),
    ];
    for (name, computed, reference, tolerance) in rows {
        let pass = (computed - reference).abs() <= tolerance;
        report.pass &= pass;
        report.row(vec![Cell::from(name), computed.into(), reference.into(), tolerance.into(), pass.into()]);
    }
    report.summary("refined_beta", witness.refined_beta);
    report.summary("refined_h_upper", witness.refined_h_upper);
    report.summary("critical_c_witness_beta", critical.beta_star);
    Ok(report)
}
