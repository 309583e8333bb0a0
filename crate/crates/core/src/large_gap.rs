//! Lower bounds for `h(c)` at large `c` and the thresholds beyond which they
//! exceed 1.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, ensure_finite, Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::search::bisect;
use crate::special::{abs_sinc_integral, sinc_squared_integral};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LargeGapVariant {
    /// `c - 2·sqrt((c/π)·∫₀¹ |sin πcv| / v dv)`
    V1,
    /// `c - 2·sqrt((c/π)·∫₀^{πc} sinc(v)² dv)`
    V2,
}

impl LargeGapVariant {
    pub fn default_bracket(self) -> (f64, f64) {
        match self {
            LargeGapVariant::V1 => (4.0, 7.0),
            LargeGapVariant::V2 => (3.0, 5.0),
        }
    }
}

impl fmt::Display for LargeGapVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LargeGapVariant::V1 => "v1",
            LargeGapVariant::V2 => "v2",
        })
    }
}

impl FromStr for LargeGapVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "v1" => Ok(LargeGapVariant::V1),
            "v2" => Ok(LargeGapVariant::V2),
            other => domain(format!("unknown large-gap variant {other:?}")),
        }
    }
}

pub fn h_lower(c: f64, variant: LargeGapVariant, spec: &QuadratureSpec) -> Result<f64> {
    ensure_finite("c", c)?;
    if c <= 0.0 {
        return domain(format!("h_lower needs c > 0, got {c}"));
    }
    let integral = match variant {
        LargeGapVariant::V1 => abs_sinc_integral(c, spec)?,
        LargeGapVariant::V2 => sinc_squared_integral(PI * c, spec)?,
    };
    Ok(c - 2.0 * (c / PI * integral).sqrt())
}

/// Root of `h_lower(c) = 1` inside `bracket`, by bisection to width `tol`.
///
/// Requires `h_lower(lo) < 1 < h_lower(hi)`.
pub fn find_large_gap_threshold(
    variant: LargeGapVariant,
    bracket: (f64, f64),
    tol: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return domain(format!("bracket must satisfy 0 < lo < hi, got [{lo}, {hi}]"));
    }
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    let f_lo = h_lower(lo, variant, spec)? - 1.0;
    let f_hi = h_lower(hi, variant, spec)? - 1.0;
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::Bracket { lo, hi, f_lo, f_hi });
    }
    let (a, b, _) = bisect(lo, hi, tol, |c| Ok(h_lower(c, variant, spec)? < 1.0))?;
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_variants_negative_at_small_c() {
        let spec = QuadratureSpec::default();
        // mpmath reference values
        assert!((h_lower(0.1, LargeGapVariant::V1, &spec).unwrap() + 0.099_452_560_181_223_66).abs() < 1e-12);
        assert!((h_lower(0.1, LargeGapVariant::V2, &spec).unwrap() + 0.098_909_016_811_817_22).abs() < 1e-12);
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("v1".parse::<LargeGapVariant>().unwrap(), LargeGapVariant::V1);
        assert_eq!(LargeGapVariant::V2.to_string(), "v2");
        assert!("v3".parse::<LargeGapVariant>().is_err());
    }

    #[test]
    fn no_sign_change_is_a_bracket_error() {
        let spec = QuadratureSpec::default();
        assert!(matches!(
            find_large_gap_threshold(LargeGapVariant::V2, (1.0, 2.0), 1e-6, &spec),
            Err(Error::Bracket { .. })
        ));
        assert!(find_large_gap_threshold(LargeGapVariant::V1, (6.0, 5.0), 1e-6, &spec).is_err());
    }
}
