//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the library: each oracle uses a different
//! algorithm from the production path.

#![allow(dead_code, clippy::excessive_precision)]

use std::f64::consts::PI;

/// `Si(x)` from its Maclaurin series summed to convergence with Kahan
/// compensation. Cancellation limits it to ~2e-13 at `x = 4π`.
pub fn si_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut n = 1.0f64;
    for _ in 0..200 {
        let y = term / n - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        term *= -x2 / ((n + 1.0) * (n + 2.0));
        n += 2.0;
        if term.abs() < 1e-30 {
            break;
        }
    }
    sum
}

pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let x = a + h * i as f64;
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    acc * h / 3.0
}

/// `∫₀^{πc} |sinc|` split at the zeros `kπ` so Simpson sees smooth pieces.
pub fn abs_sinc_simpson(c: f64, per_lobe: usize) -> f64 {
    let end = PI * c;
    let mut a = 0.0;
    let mut total = 0.0;
    while a < end {
        let b = (a + PI).min(end);
        total += simpson(|v| sinc(v).abs(), a, b, per_lobe);
        a = b;
    }
    total
}

pub fn sinc2_simpson(x: f64, panels: usize) -> f64 {
    simpson(|v| sinc(v).powi(2), 0.0, x, panels)
}

/// Λ(n) by trial division.
pub fn mangoldt_trial(n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += 1;
    }
    // m is prime; it equals n exactly when no smaller factor was found
    if m == n {
        (n as f64).ln()
    } else {
        0.0
    }
}

/// Frozen high-precision values of `Si(4πi/19)`, `i = 0..20`.
pub const SI_FROZEN: [f64; 20] = [
    0.0,
    0.645524315732723957,
    1.20074457680096472,
    1.59815847787501221,
    1.80900676613973202,
    1.84774221194128812,
    1.76413603585343561,
    1.62605208617054414,
    1.49871740771516353,
    1.42708948496975852,
    1.42648443378024931,
    1.48357261173976512,
    1.56629039395263222,
    1.63840236173161432,
    1.67329754507444611,
    1.66240353828969157,
    1.61593573830769236,
    1.55663018271874066,
    1.50954925155688591,
    1.49216122558446006,
];

pub fn si_grid() -> impl Iterator<Item = (f64, f64)> {
    (0..20).map(|i| (4.0 * PI * i as f64 / 19.0, SI_FROZEN[i]))
}
