//! Finite-scale ground truth built on the von Mangoldt function.

mod audit;
mod cache;

use serde::Serialize;

use crate::bound::g_kernel_unchecked;
use crate::error::{domain, ensure_finite, Result};

pub use audit::{chain_audit, empirical_ratio, ChainAudit, EmpiricalRun, KTerm, LinkCheck};

/// `Λ(1..=N)` together with the running sums `L(x) = Σ_{n<=x} Λ(n)/n`.
///
/// Index 0 of both arrays is an unused zero so that `n` indexes directly.
#[derive(Debug, Clone, PartialEq)]
pub struct SieveTable {
    limit: usize,
    mangoldt: Vec<f64>,
    prefix_l: Vec<f64>,
}

/// Maximum deviation of `Σ_{d|n} Λ(d)` from `log n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivisorReport {
    pub checked: usize,
    pub max_deviation: f64,
    pub worst_n: usize,
    pub tolerance: f64,
    pub pass: bool,
}

pub const DIVISOR_TOLERANCE: f64 = 1e-9;

/// Smallest-prime sieve marking every prime power `p^k <= n` with `log p`.
pub fn build_sieve(n: usize) -> Result<SieveTable> {
    if n < 2 {
        return domain(format!("sieve limit must be at least 2, got {n}"));
    }
    let mut composite = vec![false; n + 1];
    let mut mangoldt = vec![0.0; n + 1];
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        if let Some(start) = p.checked_mul(p) {
            for m in (start..=n).step_by(p) {
                composite[m] = true;
            }
        }
        let log_p = (p as f64).ln();
        let mut q = p;
        loop {
            mangoldt[q] = log_p;
            match q.checked_mul(p) {
                Some(next) if next <= n => q = next,
                _ => break,
            }
        }
    }
    Ok(SieveTable::from_mangoldt(mangoldt))
}

impl SieveTable {
    fn from_mangoldt(mangoldt: Vec<f64>) -> Self {
        let limit = mangoldt.len() - 1;
        let mut prefix_l = Vec::with_capacity(limit + 1);
        let mut acc = 0.0;
        prefix_l.push(0.0);
        for (n, &lambda) in mangoldt.iter().enumerate().skip(1) {
            acc += lambda / n as f64;
            prefix_l.push(acc);
        }
        Self { limit, mangoldt, prefix_l }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// `Λ(n)` for `1 <= n <= limit`; 0 outside.
    pub fn mangoldt(&self, n: usize) -> f64 {
        self.mangoldt.get(n).copied().unwrap_or(0.0)
    }

    pub fn mangoldt_values(&self) -> &[f64] {
        &self.mangoldt[1..]
    }

    /// Prime powers `n <= x` in increasing order.
    pub fn prime_powers(&self, x: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let top = x.min(self.limit);
        (2..=top).filter_map(move |n| {
            let lambda = self.mangoldt[n];
            (lambda > 0.0).then_some((n, lambda))
        })
    }

    fn index(&self, x: f64) -> Result<usize> {
        ensure_finite("x", x)?;
        if x < 1.0 || x > self.limit as f64 {
            return domain(format!("x must lie in [1, {}], got {x}", self.limit));
        }
        Ok(x.floor() as usize)
    }

    /// `L(x) = Σ_{n<=x} Λ(n)/n`, by prefix lookup.
    pub fn chebyshev_l(&self, x: f64) -> Result<f64> {
        Ok(self.prefix_l[self.index(x)?])
    }

    /// `H(x) = Σ_{n<=x} g(n) Λ(n) / n` with `g` evaluated at `t = log n / log T`.
    pub fn h_direct(&self, x: f64, c: f64, log_t: f64) -> Result<f64> {
        let top = self.index(x)?;
        if !(c > 0.0 && c < 1.0) {
            return domain(format!("c must lie in (0, 1), got {c}"));
        }
        if !(log_t > 0.0 && log_t.is_finite()) {
            return domain(format!("log T must be positive, got {log_t}"));
        }
        if (top as f64).ln() > log_t * (1.0 + 1e-12) {
            return domain(format!("need log T >= log x, got log T = {log_t}, x = {x}"));
        }
        Ok(self
            .prime_powers(top)
            .map(|(n, lambda)| {
                let t = ((n as f64).ln() / log_t).min(1.0);
                g_kernel_unchecked(t, c, log_t) * lambda / n as f64
            })
            .sum())
    }

    /// Checks `Σ_{d|n} Λ(d) = log n` for every `n <= m`.
    pub fn divisor_identity_check(&self, m: usize) -> Result<DivisorReport> {
        if m > self.limit {
            return domain(format!("M = {m} exceeds the sieve limit {}", self.limit));
        }
        let mut sums = vec![0.0; m + 1];
        for (d, lambda) in self.prime_powers(m) {
            for multiple in (d..=m).step_by(d) {
                sums[multiple] += lambda;
            }
        }
        let mut max_deviation = 0.0f64;
        let mut worst_n = 1;
        for (n, &s) in sums.iter().enumerate().skip(1) {
            let deviation = (s - (n as f64).ln()).abs();
            if deviation > max_deviation {
                max_deviation = deviation;
                worst_n = n;
            }
        }
        Ok(DivisorReport {
            checked: m,
            max_deviation,
            worst_n,
            tolerance: DIVISOR_TOLERANCE,
            pass: max_deviation <= DIVISOR_TOLERANCE,
        })
    }
}

/// The sequence `b_k` (with `a_k = b_k k^{-1/2}`).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientScheme {
    Ones,
    /// `b_1, b_2, ...`; must cover every `k <= y`.
    Custom(Vec<f64>),
}

impl CoefficientScheme {
    /// `b_1 = 1`, all other coefficients zero, for `k <= len`.
    pub fn first_only(len: usize) -> Self {
        let mut b = vec![0.0; len.max(1)];
        b[0] = 1.0;
        CoefficientScheme::Custom(b)
    }

    pub fn label(&self) -> &'static str {
        match self {
            CoefficientScheme::Ones => "ones",
            CoefficientScheme::Custom(_) => "custom",
        }
    }

    fn check(&self, y: usize) -> Result<()> {
        if let CoefficientScheme::Custom(b) = self {
            if b.len() < y {
                return domain(format!("scheme has {} coefficients but y = {y}", b.len()));
            }
            if b.iter().any(|v| !v.is_finite()) {
                return domain("coefficients must be finite");
            }
            if b[..y].iter().all(|&v| v == 0.0) {
                return domain("coefficients vanish identically on k <= y");
            }
        }
        Ok(())
    }

    /// `|b_k|` for `k >= 1`.
    #[inline]
    fn magnitude(&self, k: usize) -> f64 {
        match self {
            CoefficientScheme::Ones => 1.0,
            CoefficientScheme::Custom(b) => b[k - 1].abs(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table() {
        let t = build_sieve(12).unwrap();
        let ln = |x: f64| x.ln();
        assert_eq!(t.mangoldt(1), 0.0);
        assert_eq!(t.mangoldt(8), ln(2.0));
        assert_eq!(t.mangoldt(9), ln(3.0));
        assert_eq!(t.mangoldt(12), 0.0);
        assert_eq!(t.mangoldt(6), 0.0);
        assert_eq!(t.mangoldt(11), ln(11.0));
        let t2 = build_sieve(2).unwrap();
        assert_eq!(t2.mangoldt(2), ln(2.0));
        assert!(build_sieve(1).is_err());
    }

    #[test]
    fn chebyshev_l_small() {
        let t = build_sieve(100).unwrap();
        assert_eq!(t.chebyshev_l(1.0).unwrap(), 0.0);
        let by_hand = [2.0f64, 3.0, 2.0, 5.0, 7.0, 2.0, 3.0]
            .iter()
            .zip([2.0, 3.0, 4.0, 5.0, 7.0, 8.0, 9.0])
            .map(|(p, n): (&f64, f64)| p.ln() / n)
            .sum::<f64>();
        assert!((t.chebyshev_l(10.0).unwrap() - by_hand).abs() < 1e-15);
        assert!((t.chebyshev_l(10.5).unwrap() - 1.694_650_657_924_469).abs() < 1e-14);
        assert!(t.chebyshev_l(0.5).is_err());
        assert!(t.chebyshev_l(101.0).is_err());
    }

    #[test]
    fn divisor_identity_small() {
        let t = build_sieve(12).unwrap();
        let r = t.divisor_identity_check(12).unwrap();
        assert!(r.pass, "{r:?}");
        let twelve = t.mangoldt(2) + t.mangoldt(3) + t.mangoldt(4);
        assert!((twelve - 12f64.ln()).abs() < 1e-15);
        assert!(t.divisor_identity_check(13).is_err());
    }

    #[test]
    fn h_direct_edges() {
        let t = build_sieve(1000).unwrap();
        assert_eq!(t.h_direct(1.0, 0.5, 10.0).unwrap(), 0.0);
        assert!(t.h_direct(1000.0, 0.5, 2.0).is_err());
        assert!(t.h_direct(100.0, 1.5, 10.0).is_err());
    }

    #[test]
    fn scheme_validation() {
        assert!(CoefficientScheme::Custom(vec![1.0; 3]).check(4).is_err());
        assert!(CoefficientScheme::Custom(vec![0.0; 4]).check(4).is_err());
        assert!(CoefficientScheme::Custom(vec![f64::NAN, 1.0]).check(2).is_err());
        assert!(CoefficientScheme::first_only(4).check(4).is_ok());
        assert!(CoefficientScheme::Ones.check(1_000_000).is_ok());
    }
}
