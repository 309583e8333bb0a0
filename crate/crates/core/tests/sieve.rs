mod common;

use std::f64::consts::PI;
use std::sync::OnceLock;

use gapbound_core::{
    build_sieve, chain_audit, empirical_ratio, g_kernel, BoundConfig, BoundParams, CoefficientScheme,
    SieveTable,
};
use proptest::prelude::*;

fn table() -> &'static SieveTable {
    static TABLE: OnceLock<SieveTable> = OnceLock::new();
    TABLE.get_or_init(|| build_sieve(1_000_000).unwrap())
}

fn g_direct(n: usize, c: f64, log_t: f64) -> f64 {
    let ln = (n as f64).ln();
    2.0 * (PI * c * ln / log_t).sin() / (PI * ln)
}

/// `(S, S1, S2, norm)` by the textbook triple loop with trial-division Λ.
fn brute_sums(t: f64, c: f64, b: &[f64]) -> (f64, f64, f64, f64) {
    let log_t = t.ln();
    let y = t.floor() as usize;
    let (mut s, mut s1, mut s2, mut norm) = (0.0, 0.0, 0.0, 0.0);
    for k in 1..=y {
        let bk = b[k - 1].abs();
        norm += bk * bk / k as f64;
        for n in 2..=y / k {
            let lambda = common::mangoldt_trial(n);
            if lambda == 0.0 {
                continue;
            }
            let w = g_direct(n, c, log_t) * lambda / n as f64;
            let bkn = b[k * n - 1].abs();
            s += bk * bkn * w / k as f64;
            s1 += bk * bk / k as f64 * w;
            s2 += bkn * bkn * w / k as f64;
        }
    }
    (s, s1, s2, norm)
}

#[test]
fn mangoldt_matches_trial_division() {
    let t = table();
    for n in 1..=20_000 {
        assert_eq!(t.mangoldt(n), common::mangoldt_trial(n), "n = {n}");
    }
}

#[test]
fn chebyshev_psi_near_n() {
    let psi: f64 = table().mangoldt_values()[..100_000].iter().sum();
    assert!((psi / 1e5 - 1.0).abs() < 0.02, "psi(1e5) = {psi}");
}

#[test]
fn small_l_value() {
    assert!((table().chebyshev_l(10.0).unwrap() - 1.694_650_657_924_469).abs() < 1e-14);
    assert_eq!(table().chebyshev_l(1.0).unwrap(), 0.0);
    assert!(table().chebyshev_l(2e6).is_err());
}

#[test]
fn mertens_deviation_bounded() {
    // L is a step function and log is increasing, so the extremes of
    // L(x) - log x on [n, n+1) sit at x = n and x -> n+1.
    let t = table();
    let mut worst = 0.0f64;
    for n in 2..1_000_000usize {
        let l = t.chebyshev_l(n as f64).unwrap();
        worst = worst.max((l - (n as f64).ln()).abs());
        worst = worst.max((l - ((n + 1) as f64).ln()).abs());
    }
    assert!(worst <= 2.0, "max |L(x) - log x| = {worst}");
}

#[test]
fn divisor_identity_to_1e5() {
    let r = table().divisor_identity_check(100_000).unwrap();
    assert!(r.pass, "max deviation {} at n = {}", r.max_deviation, r.worst_n);
    assert_eq!(r.checked, 100_000);
}

#[test]
fn h_direct_against_brute_force() {
    let (c, log_t) = (0.5042, 1e4f64.ln());
    for &x in &[2.0, 10.0, 97.5, 1000.0, 1e4] {
        let brute: f64 =
            (2..=x as usize).map(|n| g_direct(n, c, log_t) * common::mangoldt_trial(n) / n as f64).sum();
        assert!((table().h_direct(x, c, log_t).unwrap() - brute).abs() < 1e-13, "x = {x}");
    }
    let g = g_kernel(0.5, c, 13.8155).unwrap();
    assert!((g - 0.065_595_626_433_279_12).abs() < 1e-15);
}

#[test]
fn empirical_sums_against_brute_force() {
    let t = 300.0;
    let b: Vec<f64> = (1..=300).map(|k| 1.0 + 0.5 * ((k as f64) * 0.7).sin()).collect();
    let run = empirical_ratio(table(), t, 0.0, 0.5042, &CoefficientScheme::Custom(b.clone())).unwrap();
    let (s, s1, s2, norm) = brute_sums(t, 0.5042, &b);
    for (name, ours, brute) in
        [("S", run.s, s), ("S1", run.s1, s1), ("S2", run.s2, s2), ("norm", run.norm, norm)]
    {
        assert!((ours - brute).abs() <= 1e-12 * brute.abs().max(1.0), "{name}: {ours} vs {brute}");
    }
}

#[test]
fn b1_only_collapses() {
    let t = 1e3;
    let run = empirical_ratio(table(), t, 0.0, 0.5042, &CoefficientScheme::first_only(1000)).unwrap();
    assert_eq!(run.s, 0.0);
    assert_eq!(run.s2, 0.0);
    assert_eq!(run.norm, 1.0);
    assert_eq!(run.s1, table().h_direct(t, 0.5042, t.ln()).unwrap());
}

#[test]
fn chain_audit_exact_links_and_shrinking_slack() {
    let config = BoundConfig::default();
    for beta in [0.5, 0.476] {
        let mut slacks = Vec::new();
        for t in [1e3, 1e4] {
            let run = empirical_ratio(table(), t, 0.0, 0.5042, &CoefficientScheme::Ones).unwrap();
            let audit =
                chain_audit(&run, &BoundParams::with_full_range(0.5042, beta).unwrap(), &config).unwrap();
            assert!(audit.am_gm.relative_slack >= -1e-12);
            assert!(audit.divisor_bound.relative_slack >= -1e-12);
            slacks.push(audit.envelope_slack.abs());
        }
        assert!(slacks[1] < slacks[0], "beta = {beta}: {slacks:?}");
    }
}

#[test]
fn audit_rejects_mismatched_params() {
    let run = empirical_ratio(table(), 1e3, 0.0, 0.5042, &CoefficientScheme::Ones).unwrap();
    let other = BoundParams::with_full_range(0.4, 0.476).unwrap();
    assert!(chain_audit(&run, &other, &BoundConfig::default()).is_err());
}

#[test]
fn cache_round_trip_via_file() {
    let small = build_sieve(5000).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sieve.bin");
    small.save(&path).unwrap();
    assert_eq!(SieveTable::load(&path).unwrap(), small);
}

fn scheme_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, 200).prop_filter("not all zero", |b| b.iter().any(|v| *v != 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn am_gm_holds_for_any_scheme(b in scheme_strategy(), beta in 0.2f64..1.0, c in 0.1f64..0.95) {
        let run = empirical_ratio(table(), 200.0, 0.0, c, &CoefficientScheme::Custom(b)).unwrap();
        let p = BoundParams::with_full_range(c, beta).unwrap();
        prop_assert!(4.0 * p.alpha() * p.beta >= 1.0 - 1e-15);
        let audit = chain_audit(&run, &p, &BoundConfig::default()).unwrap();
        prop_assert!(audit.am_gm.pass);
        prop_assert!(audit.divisor_bound.pass);
    }

    #[test]
    fn ratio_invariant_under_scaling(b in scheme_strategy(), scale in 0.01f64..100.0) {
        let base = empirical_ratio(table(), 200.0, 0.0, 0.5042, &CoefficientScheme::Custom(b.clone())).unwrap();
        let scaled: Vec<f64> = b.iter().map(|v| v * scale).collect();
        let other = empirical_ratio(table(), 200.0, 0.0, 0.5042, &CoefficientScheme::Custom(scaled)).unwrap();
        prop_assert!((base.ratio - other.ratio).abs() <= 1e-12 * base.ratio.abs().max(1e-300));
    }

    #[test]
    fn kernel_positive(t in 0.0f64..1.0, c in 0.01f64..0.99, log_t in 1.0f64..50.0) {
        prop_assert!(g_kernel(t, c, log_t).unwrap() > 0.0);
    }
}
