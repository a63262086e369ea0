//! Channel laws: finite-ray channels, the two-wave closed forms and the
//! Rayleigh/Rician baselines.
//!
//! Every law is normalized to unit mean power, so an instantaneous SNR is
//! `mean_snr · |h|² / E[|h|²]`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::rng::RngStream;
use crate::numerics::stats::binomial_std_error;

/// Magnitudes of a finite set of rays, sorted non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct RayChannel {
    amplitudes: Vec<f64>,
}

impl RayChannel {
    /// Sorts the amplitudes non-increasing; ray order carries no meaning.
    pub fn new(amplitudes: impl Into<Vec<f64>>) -> Result<Self> {
        let mut amplitudes = amplitudes.into();
        if amplitudes.is_empty() {
            return Err(Error::invalid("amplitudes", "need at least one ray"));
        }
        if amplitudes.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::invalid(
                "amplitudes",
                "every amplitude must be positive and finite",
            ));
        }
        amplitudes.sort_by(|a, b| b.total_cmp(a));
        Ok(RayChannel { amplitudes })
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn n_rays(&self) -> usize {
        self.amplitudes.len()
    }

    /// `Ω = E[|h|²] = Σ V_i²`.
    pub fn total_power(&self) -> f64 {
        self.amplitudes.iter().map(|v| v * v).sum()
    }

    /// Smallest attainable `|h|`: the dominant ray minus all others, floored at 0.
    pub fn gain_min(&self) -> f64 {
        let rest: f64 = self.amplitudes[1..].iter().sum();
        (self.amplitudes[0] - rest).max(0.0)
    }

    /// Largest attainable `|h|`: all rays in phase.
    pub fn gain_max(&self) -> f64 {
        self.amplitudes.iter().sum()
    }

    /// `Δ = 2V₁V₂/(V₁²+V₂²)` for a two-ray channel.
    pub fn two_wave_delta(&self) -> Option<f64> {
        match self.amplitudes[..] {
            [v1, v2] => Some(2.0 * v1 * v2 / (v1 * v1 + v2 * v2)),
            _ => None,
        }
    }

    /// True when `self` equals the first `n_rays()` rays of `other`.
    pub fn is_prefix_of(&self, other: &RayChannel) -> bool {
        self.n_rays() <= other.n_rays()
            && self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * a.max(*b))
    }
}

/// One dominant ray of amplitude 1 and `n_rays - 1` rays of amplitude `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaFamily {
    n_rays: usize,
    alpha: f64,
}

impl AlphaFamily {
    pub fn new(n_rays: usize, alpha: f64) -> Result<Self> {
        if n_rays == 0 {
            return Err(Error::invalid("n_rays", "must be at least 1"));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::invalid("alpha", "must lie in (0, 1)"));
        }
        Ok(AlphaFamily { n_rays, alpha })
    }

    pub fn n_rays(&self) -> usize {
        self.n_rays
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn channel(&self) -> RayChannel {
        let mut amplitudes = alloc::vec![self.alpha; self.n_rays];
        amplitudes[0] = 1.0;
        RayChannel { amplitudes }
    }
}

impl From<AlphaFamily> for RayChannel {
    fn from(family: AlphaFamily) -> Self {
        family.channel()
    }
}

/// Which fading law a channel follows.
#[derive(Debug, Clone, PartialEq)]
pub enum FadingSpec {
    NRay(RayChannel),
    /// Two rays with balance `delta` in (0, 1].
    TwoWave { delta: f64 },
    Rayleigh,
    /// Rician with linear K-factor `k_factor >= 0`.
    Rician { k_factor: f64 },
}

/// Support of the SNR law. `max` is `+inf` for the Gaussian-diffuse baselines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrBounds {
    pub min: f64,
    pub max: f64,
}

impl SnrBounds {
    pub fn is_bounded(&self) -> bool {
        self.max.is_finite()
    }

    #[inline]
    pub fn clamp(&self, gamma: f64) -> f64 {
        gamma.max(self.min).min(self.max)
    }
}

impl FadingSpec {
    pub fn two_wave(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        Ok(FadingSpec::TwoWave { delta })
    }

    pub fn rician(k_factor: f64) -> Result<Self> {
        if !(k_factor >= 0.0) || !k_factor.is_finite() {
            return Err(Error::invalid("k_factor", "must be finite and >= 0"));
        }
        Ok(FadingSpec::Rician { k_factor })
    }

    pub fn n_ray(amplitudes: impl Into<Vec<f64>>) -> Result<Self> {
        RayChannel::new(amplitudes).map(FadingSpec::NRay)
    }

    pub fn alpha_family(n_rays: usize, alpha: f64) -> Result<Self> {
        AlphaFamily::new(n_rays, alpha).map(|f| FadingSpec::NRay(f.channel()))
    }

    /// Re-checks the parameter invariants, for values built by hand.
    pub fn validate(&self) -> Result<()> {
        match self {
            FadingSpec::TwoWave { delta } => check_delta(*delta),
            FadingSpec::Rician { k_factor } => FadingSpec::rician(*k_factor).map(|_| ()),
            FadingSpec::NRay(ch) => RayChannel::new(ch.amplitudes.clone()).map(|_| ()),
            FadingSpec::Rayleigh => Ok(()),
        }
    }

    /// Two unit-power rays with the same `Δ`:
    /// `V₁,₂ = (√(1+Δ) ± √(1-Δ))/2`.
    pub fn two_wave_rays(delta: f64) -> Result<RayChannel> {
        check_delta(delta)?;
        let p = libm::sqrt(1.0 + delta);
        let m = libm::sqrt(1.0 - delta);
        RayChannel::new([(p + m) / 2.0, (p - m) / 2.0])
    }

    /// `Δ` when the law is two-wave (directly or as a two-ray channel).
    pub fn as_two_wave_delta(&self) -> Option<f64> {
        match self {
            FadingSpec::TwoWave { delta } => Some(*delta),
            FadingSpec::NRay(ch) => ch.two_wave_delta(),
            _ => None,
        }
    }

    pub fn ray_channel(&self) -> Option<&RayChannel> {
        match self {
            FadingSpec::NRay(ch) => Some(ch),
            _ => None,
        }
    }

    /// True for a single ray: the SNR equals its mean with probability one.
    pub fn is_deterministic(&self) -> bool {
        matches!(self, FadingSpec::NRay(ch) if ch.n_rays() == 1)
    }

    pub fn snr_bounds(&self, mean_snr: f64) -> SnrBounds {
        match self {
            FadingSpec::TwoWave { delta } => SnrBounds {
                min: mean_snr * (1.0 - delta),
                max: mean_snr * (1.0 + delta),
            },
            FadingSpec::NRay(ch) if ch.n_rays() == 1 => SnrBounds {
                min: mean_snr,
                max: mean_snr,
            },
            FadingSpec::NRay(ch) => {
                let omega = ch.total_power();
                let lo = ch.gain_min();
                let hi = ch.gain_max();
                SnrBounds {
                    min: mean_snr * (lo * lo) / omega,
                    max: mean_snr * (hi * hi) / omega,
                }
            }
            FadingSpec::Rayleigh | FadingSpec::Rician { .. } => SnrBounds {
                min: 0.0,
                max: f64::INFINITY,
            },
        }
    }

    /// Closed-form SNR CDF where one exists: two-wave, single ray, Rayleigh.
    pub fn cdf(&self, gamma: f64, mean_snr: f64) -> Option<f64> {
        if let Some(delta) = self.as_two_wave_delta() {
            return Some(two_wave_cdf_unchecked(gamma, mean_snr, delta));
        }
        match self {
            FadingSpec::NRay(ch) if ch.n_rays() == 1 => {
                Some(if gamma < mean_snr { 0.0 } else { 1.0 })
            }
            FadingSpec::Rayleigh => Some(if gamma <= 0.0 {
                0.0
            } else {
                -libm::expm1(-gamma / mean_snr)
            }),
            _ => None,
        }
    }

    pub fn has_closed_form_cdf(&self) -> bool {
        self.cdf(1.0, 1.0).is_some()
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta <= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid("delta", "must lie in (0, 1]"))
    }
}

fn check_mean(mean_snr: f64) -> Result<()> {
    if mean_snr > 0.0 && mean_snr.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("mean_snr", "must be positive and finite"))
    }
}

/// Two-wave SNR density.
///
/// Zero outside `[γ̄(1-Δ), γ̄(1+Δ)]` and `+inf` on the two endpoints, where
/// the density has an integrable singularity. Integrals against this density
/// should go through
/// [`integrate_two_wave_expectation`](crate::numerics::integrate_two_wave_expectation)
/// instead of evaluating it near the edges.
pub fn two_wave_pdf(gamma: f64, mean_snr: f64, delta: f64) -> Result<f64> {
    check_mean(mean_snr)?;
    check_delta(delta)?;
    let lo = mean_snr * (1.0 - delta);
    let hi = mean_snr * (1.0 + delta);
    if gamma < lo || gamma > hi {
        return Ok(0.0);
    }
    // Δ² - (1 - γ/γ̄)² factored as a product of distances to the edges.
    let radicand = ((gamma - lo) / mean_snr) * ((hi - gamma) / mean_snr);
    if radicand <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(1.0 / (PI * mean_snr * libm::sqrt(radicand)))
}

/// Two-wave SNR CDF, clamped to 0 below and 1 above the support.
pub fn two_wave_cdf(gamma: f64, mean_snr: f64, delta: f64) -> Result<f64> {
    check_mean(mean_snr)?;
    check_delta(delta)?;
    Ok(two_wave_cdf_unchecked(gamma, mean_snr, delta))
}

pub(crate) fn two_wave_cdf_unchecked(gamma: f64, mean_snr: f64, delta: f64) -> f64 {
    if gamma <= mean_snr * (1.0 - delta) {
        return 0.0;
    }
    if gamma >= mean_snr * (1.0 + delta) {
        return 1.0;
    }
    let s = ((1.0 - gamma / mean_snr) / delta).clamp(-1.0, 1.0);
    (0.5 - libm::asin(s) / PI).clamp(0.0, 1.0)
}

/// Draws instantaneous SNRs for one channel.
///
/// Each ray of an N-ray channel has its own random stream (`stream.split(i)`)
/// so that changing the number of rays keeps the phases of the remaining rays
/// fixed; sweeps over `N` then use common random numbers.
///
/// Samples of bounded laws are clamped to the support, which makes the bound
/// guarantees exact rather than approximate under rounding.
#[derive(Debug, Clone)]
pub struct SnrSampler {
    kind: SamplerKind,
    bounds: SnrBounds,
}

#[derive(Debug, Clone)]
enum SamplerKind {
    Constant(f64),
    TwoWave {
        mean_snr: f64,
        delta: f64,
        stream: RngStream,
    },
    Rays {
        scale: f64,
        amplitudes: Vec<f64>,
        streams: Vec<RngStream>,
    },
    Rayleigh {
        mean_snr: f64,
        stream: RngStream,
    },
    Rician {
        mean_snr: f64,
        los: f64,
        sigma: f64,
        stream: RngStream,
    },
}

impl SnrSampler {
    pub fn new(spec: &FadingSpec, mean_snr: f64, stream: &RngStream) -> Result<Self> {
        check_mean(mean_snr)?;
        spec.validate()?;
        let bounds = spec.snr_bounds(mean_snr);
        let kind = match spec {
            FadingSpec::NRay(ch) if ch.n_rays() == 1 => SamplerKind::Constant(mean_snr),
            FadingSpec::NRay(ch) => SamplerKind::Rays {
                scale: mean_snr / ch.total_power(),
                amplitudes: ch.amplitudes.clone(),
                streams: (0..ch.n_rays() as u64).map(|i| stream.split(i)).collect(),
            },
            FadingSpec::TwoWave { delta } => SamplerKind::TwoWave {
                mean_snr,
                delta: *delta,
                stream: stream.split(0),
            },
            FadingSpec::Rayleigh => SamplerKind::Rayleigh {
                mean_snr,
                stream: stream.split(0),
            },
            FadingSpec::Rician { k_factor } => SamplerKind::Rician {
                mean_snr,
                los: libm::sqrt(k_factor / (k_factor + 1.0)),
                sigma: libm::sqrt(0.5 / (k_factor + 1.0)),
                stream: stream.split(0),
            },
        };
        Ok(SnrSampler { kind, bounds })
    }

    pub fn bounds(&self) -> SnrBounds {
        self.bounds
    }

    #[inline]
    pub fn draw(&mut self) -> f64 {
        match &mut self.kind {
            SamplerKind::Constant(g) => *g,
            SamplerKind::TwoWave {
                mean_snr,
                delta,
                stream,
            } => {
                let c = libm::cos(stream.phase());
                self.bounds.clamp(*mean_snr * (1.0 + *delta * c))
            }
            SamplerKind::Rays {
                scale,
                amplitudes,
                streams,
            } => {
                let (mut re, mut im) = (0.0, 0.0);
                for (v, s) in amplitudes.iter().zip(streams.iter_mut()) {
                    let (sin, cos) = libm::sincos(s.phase());
                    re += v * cos;
                    im += v * sin;
                }
                self.bounds.clamp(*scale * (re * re + im * im))
            }
            SamplerKind::Rayleigh { mean_snr, stream } => *mean_snr * stream.exponential(),
            SamplerKind::Rician {
                mean_snr,
                los,
                sigma,
                stream,
            } => {
                let (x, y) = stream.standard_normal_pair();
                let re = *los + *sigma * x;
                let im = *sigma * y;
                *mean_snr * (re * re + im * im)
            }
        }
    }

    pub fn fill(&mut self, out: &mut [f64]) {
        for slot in out {
            *slot = self.draw();
        }
    }
}

/// `count` SNR draws from `spec` using `stream`.
pub fn sample_snr(spec: &FadingSpec, mean_snr: f64, stream: &RngStream, count: usize) -> Result<Vec<f64>> {
    let mut sampler = SnrSampler::new(spec, mean_snr, stream)?;
    Ok((0..count).map(|_| sampler.draw()).collect())
}

/// Empirical probability with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalProbability {
    pub value: f64,
    pub std_error: f64,
    pub count: u64,
}

/// Rician SNR CDF at `gamma`, estimated from `count` draws.
pub fn rician_cdf_mc(
    gamma: f64,
    mean_snr: f64,
    k_factor: f64,
    stream: &RngStream,
    count: u64,
) -> Result<EmpiricalProbability> {
    if count == 0 {
        return Err(Error::invalid("count", "must be at least 1"));
    }
    let mut sampler = SnrSampler::new(&FadingSpec::rician(k_factor)?, mean_snr, stream)?;
    let mut hits = 0u64;
    for _ in 0..count {
        if sampler.draw() <= gamma {
            hits += 1;
        }
    }
    Ok(EmpiricalProbability {
        value: hits as f64 / count as f64,
        std_error: binomial_std_error(hits, count),
        count,
    })
}
