//! Published reference values and the precision to which they are printed.
//!
//! Each tolerance matches the number of digits given for the value; further
//! digits are computed here, never compared.

/// Largest gap multiple for which the small-gap bound stays below 1.
pub const C0: f64 = 0.5042;
pub const C0_TOL: f64 = 1e-4;

/// AM–GM weight at the reported optimum.
pub const BETA0: f64 = 0.476;
pub const BETA0_TOL: f64 = 5e-4;

/// Critical point at `(C0, BETA0)`.
pub const PHI0: f64 = 0.480_253_755_69;
pub const PHI0_TOL: f64 = 1e-11;

/// Upper bound for `h(C0)` at `(C0, BETA0)`.
pub const H_C0: f64 = 0.999_993_501;
pub const H_C0_TOL: f64 = 1e-9;

/// Large-gap thresholds for the `|sin|/v` and `sinc²` lower bounds.
pub const THRESHOLD_V1: f64 = 5.5602;
pub const THRESHOLD_V2: f64 = 3.6747;
pub const THRESHOLD_TOL: f64 = 1e-4;

/// Bracket searched for the small-gap threshold.
pub const C_BRACKET: (f64, f64) = (0.5, 0.52);
