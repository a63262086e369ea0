//! Secrecy metrics over a Bob/Eve scenario.
//!
//! Outage of secrecy capacity happens when `γ_b < γ_eq = 2^R·γ_e + 2^R - 1`.
//! With bounded SNR supports the event is impossible as soon as Bob's lowest
//! SNR (or the transmission threshold, if higher) exceeds the largest
//! `γ_eq`; [`secrecy_certificate`] checks exactly that.

mod outage;
mod scatterers;
mod scenario;

pub use outage::{
    estimate_from_counts, monte_carlo_counts, opsc_classical_integral, opsc_closed_form,
    opsc_monte_carlo, opsc_reliability_integral, shard_counts, OpscEstimate, OpscMethod,
    OutageCounts, ShardPlan, MIN_MONTE_CARLO_SAMPLES,
};
pub use scatterers::{alpha_feasibility, min_mean_snr_bob_for_secrecy, power_loss_ratio};
pub use scenario::{Normalization, SecrecyScenario};

use crate::error::{Error, Result};
use crate::fading::SnrSampler;
use crate::numerics::rng::RngStream;

/// `[log2(1+γ_b) - log2(1+γ_e)]⁺`.
pub fn secrecy_capacity(gamma_b: f64, gamma_e: f64) -> f64 {
    (libm::log2(1.0 + gamma_b) - libm::log2(1.0 + gamma_e)).max(0.0)
}

/// `2^R·γ_e + 2^R - 1`, grouped so that `R = 0` returns `γ_e` exactly.
#[inline]
pub fn gamma_eq(gamma_e: f64, rate: f64) -> f64 {
    let f = libm::exp2(rate);
    f * gamma_e + (f - 1.0)
}

/// Outcome of the perfect-secrecy test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyCertificate {
    pub perfect: bool,
    /// `max(γ_b^min, γ_th)`.
    pub bob_floor: f64,
    /// `γ_eq` at Eve's largest SNR; `+inf` when Eve is unbounded.
    pub gamma_eq_max: f64,
    /// Eve follows a Gaussian-diffuse law, so no certificate is possible.
    pub unbounded_eavesdropper: bool,
}

/// Checks `max(γ_b^min, γ_th) > 2^R·γ_e^max + 2^R - 1` (strict).
///
/// Never errors: an unbounded eavesdropper simply yields `perfect = false`
/// with the diagnostic flag set.
pub fn secrecy_certificate(s: &SecrecyScenario) -> SecrecyCertificate {
    let bob_floor = s.bob_bounds().min.max(s.snr_threshold());
    let eve = s.eve_bounds();
    if !eve.is_bounded() {
        return SecrecyCertificate {
            perfect: false,
            bob_floor,
            gamma_eq_max: f64::INFINITY,
            unbounded_eavesdropper: true,
        };
    }
    let gamma_eq_max = s.gamma_eq(eve.max);
    SecrecyCertificate {
        perfect: bob_floor > gamma_eq_max,
        bob_floor,
        gamma_eq_max,
        unbounded_eavesdropper: false,
    }
}

pub fn perfect_secrecy_check(s: &SecrecyScenario) -> bool {
    secrecy_certificate(s).perfect
}

/// Largest constant rate with certified zero outage:
/// `[log2((max(γ_b^min, γ_th) + 1)/(γ_e^max + 1))]⁺`.
pub fn max_secrecy_rate(s: &SecrecyScenario) -> Result<f64> {
    let eve = s.eve_bounds();
    if !eve.is_bounded() {
        return Err(Error::UnboundedEavesdropper);
    }
    let floor = s.bob_bounds().min.max(s.snr_threshold());
    Ok((libm::log2(floor + 1.0) - libm::log2(eve.max + 1.0)).max(0.0))
}

/// Rate Alice can use when she knows Bob's instantaneous SNR but only Eve's
/// law: `[log2((γ_b + 1)/(γ_e^max + 1))]⁺`.
pub fn adaptive_secrecy_rate(gamma_b: f64, s: &SecrecyScenario) -> Result<f64> {
    let eve = s.eve_bounds();
    if !eve.is_bounded() {
        return Err(Error::UnboundedEavesdropper);
    }
    Ok((libm::log2(gamma_b + 1.0) - libm::log2(eve.max + 1.0)).max(0.0))
}

/// Classical OPSC when both channels are Rayleigh:
/// `1 - γ̄_b/(γ̄_b + 2^R·γ̄_e) · exp(-(2^R - 1)/γ̄_b)`.
pub fn rayleigh_opsc_baseline(mean_snr_bob: f64, mean_snr_eve: f64, rate: f64) -> f64 {
    let f = libm::exp2(rate);
    let ratio = mean_snr_bob / (mean_snr_bob + f * mean_snr_eve);
    (1.0 - ratio * libm::exp(-(f - 1.0) / mean_snr_bob)).clamp(0.0, 1.0)
}

/// `η = P{γ_b > γ_th}·R_s` from Bob's closed-form CDF.
///
/// Returns [`Error::UnsupportedPair`] when Bob's law has no closed-form CDF
/// and a threshold is set; use [`throughput_monte_carlo`] then.
pub fn throughput(s: &SecrecyScenario) -> Result<f64> {
    if s.is_classical() {
        return Ok(s.rate());
    }
    let cdf = s
        .bob_cdf(s.snr_threshold())
        .ok_or(Error::UnsupportedPair("Bob's SNR law has no closed-form CDF"))?;
    Ok((1.0 - cdf) * s.rate())
}

/// Throughput with `P{γ_b > γ_th}` estimated from `samples` draws of Bob's
/// channel.
pub fn throughput_monte_carlo(s: &SecrecyScenario, samples: u64, stream: &RngStream) -> Result<f64> {
    if s.is_classical() {
        return Ok(s.rate());
    }
    if samples == 0 {
        return Err(Error::invalid("samples", "must be at least 1"));
    }
    let mut bob = SnrSampler::new(s.bob(), s.effective_mean_snr_bob(), stream)?;
    let above = (0..samples).filter(|_| bob.draw() > s.snr_threshold()).count();
    Ok(above as f64 / samples as f64 * s.rate())
}
