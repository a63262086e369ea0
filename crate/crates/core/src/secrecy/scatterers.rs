//! Analysis for channels built from a dominant ray plus `N - 1` weaker rays
//! of relative amplitude `α`.

use super::scenario::SecrecyScenario;
use super::secrecy_certificate;
use crate::error::{Error, Result};

/// Fraction of mean power Bob keeps when only his `n_bob` strongest rays of
/// Eve's `n_eve` survive: `(1 + α²(n_bob - 1)) / (1 + α²(n_eve - 1))`.
pub fn power_loss_ratio(n_bob: usize, n_eve: usize, alpha: f64) -> Result<f64> {
    if n_bob == 0 {
        return Err(Error::invalid("n_bob", "must be at least 1"));
    }
    if n_eve < n_bob {
        return Err(Error::invalid("n_eve", "must be at least n_bob"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid("alpha", "must lie in (0, 1)"));
    }
    let a2 = alpha * alpha;
    Ok((1.0 + a2 * (n_bob - 1) as f64) / (1.0 + a2 * (n_eve - 1) as f64))
}

/// `α·(n_bob - 1) < 1`: the dominant ray outweighs the rest, so Bob's SNR is
/// bounded away from zero. Necessary for perfect secrecy without a threshold.
pub fn alpha_feasibility(n_bob: usize, alpha: f64) -> bool {
    alpha * (n_bob.saturating_sub(1) as f64) < 1.0
}

/// Smallest `γ̄_b` at which the perfect-secrecy certificate holds, found by
/// bisection on the certificate itself.
///
/// `Ok(None)` when no finite `γ̄_b` works (Bob's SNR can reach zero and the
/// threshold does not clear Eve). `Ok(Some(0.0))` when the threshold alone
/// already certifies every `γ̄_b`. The returned value passes the certificate.
pub fn min_mean_snr_bob_for_secrecy(s: &SecrecyScenario) -> Result<Option<f64>> {
    if !s.eve_bounds().is_bounded() {
        return Err(Error::UnboundedEavesdropper);
    }
    let passes = |g: f64| -> Result<bool> {
        Ok(secrecy_certificate(&s.clone().with_mean_snr_bob(g)?).perfect)
    };
    if passes(f64::MIN_POSITIVE)? {
        return Ok(Some(0.0));
    }
    let mut hi = 1.0;
    while !passes(hi)? {
        hi *= 2.0;
        if hi > 1e300 {
            return Ok(None);
        }
    }
    let mut lo = hi / 2.0;
    while passes(lo)? {
        hi = lo;
        lo /= 2.0;
    }
    while hi - lo > 1e-14 * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if passes(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}
