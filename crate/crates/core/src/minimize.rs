//! Monotone root finding shared by the flux inverses and the variational
//! evaluator.

/// Absolute tolerance on the argument for monotone root finding.
pub(crate) const TOL_ROOT: f64 = 1e-12;
pub(crate) const MAX_BISECTIONS: usize = 200;

/// Solves `f(u) = target` for an increasing `f` on a bracket `[lo, hi]`
/// with `f(lo) <= target <= f(hi)`.
pub(crate) fn bisect_increasing(f: impl Fn(f64) -> f64, target: f64, lo: f64, hi: f64) -> f64 {
    bisect_increasing_within(f, target, lo, hi, TOL_ROOT)
}

/// As [`bisect_increasing`], stopping once the bracket is narrower than `tol`.
pub(crate) fn bisect_increasing_within(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
