//! Bracketing searches shared by the solvers.

use crate::error::Result;

const MAX_BISECTIONS: usize = 400;

/// Shrinks `[lo, hi]` around the boundary of a monotone predicate.
///
/// `below(x)` must be true on the low side of the boundary and false above
/// it; the caller is responsible for checking the endpoints. Returns the
/// final bracket and the number of predicate evaluations.
pub(crate) fn bisect<P>(mut lo: f64, mut hi: f64, tol: f64, mut below: P) -> Result<(f64, f64, usize)>
where
    P: FnMut(f64) -> Result<bool>,
{
    let mut evals = 0;
    while hi - lo > tol && evals < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            break;
        }
        evals += 1;
        if below(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi, evals))
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimisation of `f` on `[a, b]` until the bracket width is
/// at most `tol`. Returns `(x, f(x), evaluations)` for the better interior
/// probe of the last bracket.
pub(crate) fn golden_section<F>(mut a: f64, mut b: f64, tol: f64, mut f: F) -> Result<(f64, f64, usize)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evals = 2;
    while b - a > tol && evals < MAX_BISECTIONS {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
        evals += 1;
    }
    if f1 <= f2 {
        Ok((x1, f1, evals))
    } else {
        Ok((x2, f2, evals))
    }
}
