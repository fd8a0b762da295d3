//! Bracketing solver for the estimating equations of monotone scores.
//!
//! For a nonincreasing `g`, the M-estimator is the midpoint of
//! `[sup{t : g(t) > 0}, inf{t : g(t) < 0}]`. Both ends are located by
//! bisection after the bracket has been grown to contain a sign change.

use crate::error::{Error, Result};

/// Absolute tolerance on the located root.
pub const ROOT_TOL: f64 = 1e-10;
/// Hard cap on bisection steps for each end of the solution interval.
pub const MAX_BISECTIONS: usize = 200;
const MAX_EXPANSIONS: usize = 80;

/// Midpoint of the zero set of a nonincreasing `g`, searched from `guess`
/// with initial half-width `scale`.
pub fn monotone_root<G>(g: G, guess: f64, scale: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let mut width = if scale.is_finite() && scale > 0.0 {
        scale
    } else {
        1.0
    };
    let guess = if guess.is_finite() { guess } else { 0.0 };

    // Grow [pos, neg] until g(pos) > 0 and g(neg) < 0.
    let mut pos = guess - width;
    let mut neg = guess + width;
    let mut g_pos = g(pos);
    let mut g_neg = g(neg);
    let mut expansions = 0;
    while !(g_pos > 0.0 && g_neg < 0.0) {
        if expansions == MAX_EXPANSIONS || !pos.is_finite() || !neg.is_finite() {
            // A flat zero over the whole bracket is still a valid solution set.
            if g_pos == 0.0 && g_neg == 0.0 {
                return Ok(0.5 * (pos + neg));
            }
            return Err(Error::NoSignChange { lo: pos, hi: neg });
        }
        width *= 2.0;
        if g_pos <= 0.0 {
            // The left end is past the root set; move it out, keep what we learned.
            if g_pos < 0.0 {
                neg = pos;
                g_neg = g_pos;
            }
            pos = guess - width;
            g_pos = g(pos);
        }
        if g_neg >= 0.0 {
            if g_neg > 0.0 {
                pos = neg;
                g_pos = g_neg;
            }
            neg = guess + width;
            g_neg = g(neg);
        }
        expansions += 1;
    }

    // Lower end: sup{t : g(t) > 0}, kept in [lo, hi] with g(lo) > 0 >= g(hi).
    // Every probe with g < 0 also tightens the start of the upper search.
    let (mut lo, mut hi) = (pos, neg);
    let mut first_negative = neg;
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= ROOT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = g(mid);
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
            if v < 0.0 {
                first_negative = mid;
            }
        }
    }
    let sup_positive = 0.5 * (lo + hi);

    // Upper end: inf{t : g(t) < 0}, kept in [lo, hi] with g(lo) >= 0 > g(hi).
    let (mut lo, mut hi) = (lo, first_negative);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= ROOT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let inf_negative = 0.5 * (lo + hi);

    Ok(0.5 * (sup_positive + inf_negative))
}

/// Median of a slice (NaN-free input assumed); `None` when empty.
pub(crate) fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_unstable_by(|a, b| a.total_cmp(b));
    let m = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root() {
        let r = monotone_root(|t| 3.0 - t, 0.0, 1.0).unwrap();
        assert!((r - 3.0).abs() < 1e-10);
    }

    #[test]
    fn flat_zero_interval_takes_midpoint() {
        // g is zero on [1, 5].
        let g = |t: f64| {
            if t < 1.0 {
                1.0 - t
            } else if t > 5.0 {
                5.0 - t
            } else {
                0.0
            }
        };
        let r = monotone_root(g, 0.0, 0.5).unwrap();
        assert!((r - 3.0).abs() < 1e-9, "{r}");
    }

    #[test]
    fn step_function_jump() {
        // jumps from +1 to -1 at t = 2.5
        let r = monotone_root(|t| if t < 2.5 { 1.0 } else { -1.0 }, 100.0, 0.1).unwrap();
        assert!((r - 2.5).abs() < 1e-9);
    }

    #[test]
    fn far_root_found_by_expansion() {
        let r = monotone_root(|t| 1e6 - t, 0.0, 1e-3).unwrap();
        assert!((r - 1e6).abs() < 1e-6);
    }

    #[test]
    fn no_sign_change_reported() {
        let e = monotone_root(|_| 1.0, 0.0, 1.0).unwrap_err();
        assert!(matches!(e, Error::NoSignChange { .. }));
    }

    #[test]
    fn median_even_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&mut []), None);
    }
}
