//! Single-point evaluation: certificate, OPSC, throughput and SNR bounds.

use serde::Serialize;

use raysec_core::numerics::RngStream;
use raysec_core::secrecy::{
    max_secrecy_rate, opsc_closed_form, secrecy_certificate, throughput, throughput_monte_carlo,
};
use raysec_core::{Error, OpscEstimate, OpscMethod, QuadratureSpec, Result, SecrecyScenario};

use crate::parallel;

/// Stream ids under the master seed.
pub const OPSC_STREAM: u64 = 0;
pub const THROUGHPUT_STREAM: u64 = 1;

/// Confidence of the reported one-sided upper bound.
pub const UPPER_BOUND_CONFIDENCE: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub samples: u64,
    pub seed: u64,
    pub quadrature: QuadratureSpec,
}

impl EvalOptions {
    pub fn new(samples: u64, seed: u64) -> Self {
        EvalOptions {
            samples,
            seed,
            quadrature: QuadratureSpec::default(),
        }
    }
}

/// OPSC together with the reason the closed form was skipped, if it was.
#[derive(Debug, Clone, PartialEq)]
pub struct OpscOutcome {
    pub estimate: OpscEstimate,
    pub fallback_reason: Option<String>,
}

/// OPSC by the cheapest exact route available.
///
/// Order: threshold check, perfect-secrecy certificate, closed-form
/// quadrature, then Monte Carlo for pairs without a closed form.
pub fn opsc(s: &SecrecyScenario, opts: &EvalOptions) -> Result<OpscOutcome> {
    match opsc_closed_form(s, &opts.quadrature) {
        Ok(estimate) => Ok(OpscOutcome {
            estimate,
            fallback_reason: None,
        }),
        Err(Error::UnsupportedPair(reason)) => {
            let base = RngStream::new(opts.seed, OPSC_STREAM);
            let estimate = parallel::opsc_monte_carlo(s, opts.samples, &base)?;
            Ok(OpscOutcome {
                estimate,
                fallback_reason: Some(reason.to_string()),
            })
        }
        Err(e) => Err(e),
    }
}

/// Throughput and whether it came from sampling Bob's channel.
pub fn throughput_with_fallback(s: &SecrecyScenario, opts: &EvalOptions) -> Result<(f64, bool)> {
    match throughput(s) {
        Ok(t) => Ok((t, false)),
        Err(Error::UnsupportedPair(_)) => {
            let stream = RngStream::new(opts.seed, THROUGHPUT_STREAM);
            Ok((throughput_monte_carlo(s, opts.samples, &stream)?, true))
        }
        Err(e) => Err(e),
    }
}

/// Linear SNR bounds; unbounded values serialize as `null`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsReport {
    pub snr_bob_min: f64,
    pub snr_bob_max: Option<f64>,
    pub snr_eve_min: f64,
    pub snr_eve_max: Option<f64>,
    /// `max(γ_b^min, γ_th)`.
    pub bob_floor: f64,
    pub gamma_eq_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpscReport {
    pub probability: f64,
    pub method: &'static str,
    pub std_error: f64,
    pub samples_or_nodes: u64,
    pub exact_zero: bool,
    pub events: u64,
    pub trials: u64,
    pub upper_bound_95: f64,
    pub fallback_reason: Option<String>,
}

impl From<&OpscOutcome> for OpscReport {
    fn from(o: &OpscOutcome) -> Self {
        let e = &o.estimate;
        OpscReport {
            probability: e.value,
            method: e.method.as_str(),
            std_error: e.std_error,
            samples_or_nodes: e.samples_or_nodes,
            exact_zero: e.exact_zero,
            events: e.events,
            trials: e.trials,
            upper_bound_95: e.upper_bound(UPPER_BOUND_CONFIDENCE),
            fallback_reason: o.fallback_reason.clone(),
        }
    }
}

/// Everything `raysec eval` prints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub perfect_secrecy: bool,
    pub unbounded_eavesdropper: bool,
    /// `null` when Eve's SNR is unbounded.
    pub max_secrecy_rate_bits: Option<f64>,
    pub rate_bits: f64,
    pub opsc: OpscReport,
    pub throughput_bits: f64,
    pub throughput_method: &'static str,
    pub bounds: BoundsReport,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn evaluate(s: &SecrecyScenario, opts: &EvalOptions) -> Result<Evaluation> {
    let cert = secrecy_certificate(s);
    let max_rate = match max_secrecy_rate(s) {
        Ok(r) => Some(r),
        Err(Error::UnboundedEavesdropper) => None,
        Err(e) => return Err(e),
    };
    let outcome = opsc(s, opts)?;
    let (throughput_bits, sampled) = throughput_with_fallback(s, opts)?;
    let (b, e) = (s.bob_bounds(), s.eve_bounds());
    debug_assert!(!cert.perfect || outcome.estimate.method == OpscMethod::ExactZeroCertificate);
    Ok(Evaluation {
        perfect_secrecy: cert.perfect,
        unbounded_eavesdropper: cert.unbounded_eavesdropper,
        max_secrecy_rate_bits: max_rate,
        rate_bits: s.rate(),
        opsc: OpscReport::from(&outcome),
        throughput_bits,
        throughput_method: if sampled { "monte_carlo" } else { "closed_form" },
        bounds: BoundsReport {
            snr_bob_min: b.min,
            snr_bob_max: finite(b.max),
            snr_eve_min: e.min,
            snr_eve_max: finite(e.max),
            bob_floor: cert.bob_floor,
            gamma_eq_max: finite(cert.gamma_eq_max),
        },
    })
}
