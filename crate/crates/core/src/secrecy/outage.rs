//! Outage probability of secrecy capacity: closed-form quadrature and
//! Monte Carlo.

use alloc::vec::Vec;

use super::scenario::SecrecyScenario;
use super::secrecy_certificate;
use crate::error::{Error, Result};
use crate::fading::{FadingSpec, SnrSampler};
use crate::numerics::quadrature::{two_wave_expectation, Quadrature, QuadratureSpec};
use crate::numerics::rng::RngStream;
use crate::numerics::stats::{binomial_std_error, clopper_pearson_zero_upper, wilson_interval};

pub const MIN_MONTE_CARLO_SAMPLES: u64 = 1000;

/// Integrands are probabilities; changes below one ulp of 1 are rounding.
const PROBABILITY_FLOOR: f64 = f64::EPSILON;

const BOB_LANE: u64 = 0;
const EVE_LANE: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpscMethod {
    ClosedFormQuadrature,
    MonteCarlo,
    ExactZeroCertificate,
}

impl OpscMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            OpscMethod::ClosedFormQuadrature => "closed_form_quadrature",
            OpscMethod::MonteCarlo => "monte_carlo",
            OpscMethod::ExactZeroCertificate => "exact_zero_certificate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpscEstimate {
    pub value: f64,
    pub method: OpscMethod,
    /// Binomial standard error for Monte Carlo, 0 otherwise.
    pub std_error: f64,
    /// Draws for Monte Carlo, integrand evaluations for quadrature.
    pub samples_or_nodes: u64,
    /// Set only by the analytic certificate, never by sampling.
    pub exact_zero: bool,
    /// Monte Carlo outage events (0 for other methods).
    pub events: u64,
    /// Monte Carlo denominator: all draws, or those with `γ_b > γ_th`.
    pub trials: u64,
}

impl OpscEstimate {
    fn certified_zero() -> Self {
        OpscEstimate {
            value: 0.0,
            method: OpscMethod::ExactZeroCertificate,
            std_error: 0.0,
            samples_or_nodes: 0,
            exact_zero: true,
            events: 0,
            trials: 0,
        }
    }

    /// Wilson interval of a Monte Carlo estimate.
    pub fn wilson_interval(&self, confidence: f64) -> Option<(f64, f64)> {
        (self.method == OpscMethod::MonteCarlo && self.trials > 0)
            .then(|| wilson_interval(self.events, self.trials, confidence))
    }

    /// One-sided upper bound on the outage probability.
    ///
    /// A Monte Carlo run without events reports the Clopper-Pearson bound,
    /// which is how "no events observed" is told apart from a certified zero.
    pub fn upper_bound(&self, confidence: f64) -> f64 {
        match self.method {
            OpscMethod::ExactZeroCertificate => 0.0,
            OpscMethod::ClosedFormQuadrature => self.value,
            OpscMethod::MonteCarlo if self.events == 0 => {
                clopper_pearson_zero_upper(self.trials, confidence)
            }
            OpscMethod::MonteCarlo => {
                // two-sided interval at 2c-1 has one-sided coverage c
                wilson_interval(self.events, self.trials, 2.0 * confidence - 1.0).1
            }
        }
    }
}

/// Closed-form OPSC via quadrature over Eve's two-wave law.
///
/// Supported pairs: Eve two-wave (or a single deterministic ray) against Bob
/// two-wave, single ray or Rayleigh. Scenarios that pass the perfect-secrecy
/// certificate return an exact zero without integrating.
pub fn opsc_closed_form(s: &SecrecyScenario, quad: &QuadratureSpec) -> Result<OpscEstimate> {
    check_threshold(s)?;
    if secrecy_certificate(s).perfect {
        return Ok(OpscEstimate::certified_zero());
    }
    let q = if s.is_classical() {
        opsc_classical_integral(s, quad)?
    } else {
        opsc_reliability_integral(s, quad)?
    };
    Ok(OpscEstimate {
        value: q.value.clamp(0.0, 1.0),
        method: OpscMethod::ClosedFormQuadrature,
        std_error: 0.0,
        samples_or_nodes: q.nodes as u64,
        exact_zero: false,
        events: 0,
        trials: 0,
    })
}

fn check_threshold(s: &SecrecyScenario) -> Result<()> {
    let gamma_max = s.bob_bounds().max;
    if !s.is_classical() && s.snr_threshold() >= gamma_max {
        return Err(Error::ThresholdExceedsSupport {
            threshold: s.snr_threshold(),
            gamma_max,
        });
    }
    Ok(())
}

fn check_pair(s: &SecrecyScenario) -> Result<()> {
    if !s.bob().has_closed_form_cdf() {
        return Err(Error::UnsupportedPair(
            "Bob's SNR law has no closed-form CDF (use Monte Carlo)",
        ));
    }
    if s.eve().as_two_wave_delta().is_none() && !s.eve().is_deterministic() {
        return Err(Error::UnsupportedPair(
            "Eve's SNR law must be two-wave for the closed form (use Monte Carlo)",
        ));
    }
    Ok(())
}

/// Points of Bob's SNR axis where his CDF is not smooth.
fn bob_kinks(s: &SecrecyScenario) -> Vec<f64> {
    let mean = s.effective_mean_snr_bob();
    match s.bob() {
        FadingSpec::Rayleigh => Vec::new(),
        spec if spec.is_deterministic() => alloc::vec![mean],
        spec => {
            let b = spec.snr_bounds(mean);
            alloc::vec![b.min, b.max]
        }
    }
}

/// `E_e[g(γ_e)]` over Eve's law with kinks given on Eve's SNR axis.
fn expect_over_eve<G: FnMut(f64) -> f64>(
    s: &SecrecyScenario,
    mut g: G,
    eve_kinks: &[f64],
    quad: &QuadratureSpec,
) -> Result<Quadrature> {
    let mean = s.effective_mean_snr_eve();
    if s.eve().is_deterministic() {
        return Ok(Quadrature {
            value: g(mean),
            error_estimate: 0.0,
            nodes: 1,
        });
    }
    let delta = s
        .eve()
        .as_two_wave_delta()
        .ok_or(Error::UnsupportedPair("Eve's SNR law must be two-wave"))?;
    two_wave_expectation(g, mean, delta, eve_kinks, quad, PROBABILITY_FLOOR)
}

/// Classical OPSC `∫ F̂_b(γ_eq(γ_e)) f_e(γ_e) dγ_e`, ignoring any threshold.
///
/// `F̂_b` is Bob's CDF clamped to 0 and 1 outside his support; its clamp
/// points are mapped to Eve's axis and used as quadrature split points.
pub fn opsc_classical_integral(s: &SecrecyScenario, quad: &QuadratureSpec) -> Result<Quadrature> {
    check_pair(s)?;
    let kinks: Vec<f64> = bob_kinks(s).into_iter().map(|k| s.gamma_eq_inverse(k)).collect();
    expect_over_eve(
        s,
        |ge| s.bob_cdf(s.gamma_eq(ge)).unwrap_or(f64::NAN),
        &kinks,
        quad,
    )
}

/// OPSC conditioned on transmission (`γ_b > γ_th`), evaluated as
///
/// `[∫_{L}^{∞} F_b(γ_eq(γ_e)) f_e dγ_e - F_b(γ_th)(1 - F_e(L))] / (1 - F_b(γ_th))`
///
/// with `L = [(γ_th + 1)/2^R - 1]⁺`. At `γ_th = 0` it reduces to
/// [`opsc_classical_integral`].
pub fn opsc_reliability_integral(s: &SecrecyScenario, quad: &QuadratureSpec) -> Result<Quadrature> {
    check_pair(s)?;
    check_threshold(s)?;
    let th = s.snr_threshold();
    let lower = s.gamma_eq_inverse(th).max(0.0);
    let mut kinks: Vec<f64> = bob_kinks(s).into_iter().map(|k| s.gamma_eq_inverse(k)).collect();
    kinks.push(lower);

    let integral = expect_over_eve(
        s,
        |ge| {
            if ge > lower {
                s.bob_cdf(s.gamma_eq(ge)).unwrap_or(f64::NAN)
            } else {
                0.0
            }
        },
        &kinks,
        quad,
    )?;
    let fb_th = s.bob_cdf(th).unwrap_or(f64::NAN);
    let fe_lower = s.eve_cdf(lower).unwrap_or(f64::NAN);
    let value = (integral.value - fb_th * (1.0 - fe_lower)) / (1.0 - fb_th);
    Ok(Quadrature {
        value,
        error_estimate: integral.error_estimate / (1.0 - fb_th),
        nodes: integral.nodes,
    })
}

/// Fixed partition of a Monte Carlo run into shards.
///
/// Shard `i` draws from `base.split(i)`, so the merged counts depend only on
/// the base stream and the plan, not on how shards are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShardPlan {
    samples: u64,
    shard_size: u64,
}

impl ShardPlan {
    pub const DEFAULT_SHARD_SIZE: u64 = 1 << 16;

    pub fn new(samples: u64, shard_size: u64) -> Result<Self> {
        if shard_size == 0 {
            return Err(Error::invalid("shard_size", "must be at least 1"));
        }
        Ok(ShardPlan {
            samples,
            shard_size,
        })
    }

    pub fn for_samples(samples: u64) -> Self {
        ShardPlan {
            samples,
            shard_size: Self::DEFAULT_SHARD_SIZE,
        }
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn shards(&self) -> u64 {
        self.samples.div_ceil(self.shard_size)
    }

    pub fn shard_len(&self, index: u64) -> u64 {
        let start = index * self.shard_size;
        self.samples.saturating_sub(start).min(self.shard_size)
    }
}

/// Raw Monte Carlo tallies; merging is plain addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OutageCounts {
    pub draws: u64,
    /// Draws with `γ_b > γ_th` (every draw in the classical formulation).
    pub transmissions: u64,
    pub outages: u64,
}

impl OutageCounts {
    pub fn merge(self, other: OutageCounts) -> OutageCounts {
        OutageCounts {
            draws: self.draws + other.draws,
            transmissions: self.transmissions + other.transmissions,
            outages: self.outages + other.outages,
        }
    }
}

/// Tallies for one shard. Bob and Eve are drawn independently from separate
/// lanes of the shard's stream.
pub fn shard_counts(s: &SecrecyScenario, plan: &ShardPlan, index: u64, base: &RngStream) -> Result<OutageCounts> {
    let shard = base.split(index);
    let mut bob = SnrSampler::new(s.bob(), s.effective_mean_snr_bob(), &shard.split(BOB_LANE))?;
    let mut eve = SnrSampler::new(s.eve(), s.effective_mean_snr_eve(), &shard.split(EVE_LANE))?;
    let n = plan.shard_len(index);
    let th = s.snr_threshold();
    let classical = s.is_classical();
    let mut counts = OutageCounts {
        draws: n,
        ..OutageCounts::default()
    };
    for _ in 0..n {
        let gb = bob.draw();
        let geq = s.gamma_eq(eve.draw());
        if classical {
            counts.outages += (gb < geq) as u64;
        } else if gb > th {
            counts.transmissions += 1;
            counts.outages += (gb < geq) as u64;
        }
    }
    if classical {
        counts.transmissions = n;
    }
    Ok(counts)
}

/// Tallies for every shard of `plan`, run one after the other.
pub fn monte_carlo_counts(s: &SecrecyScenario, plan: &ShardPlan, base: &RngStream) -> Result<OutageCounts> {
    (0..plan.shards()).try_fold(OutageCounts::default(), |acc, i| {
        shard_counts(s, plan, i, base).map(|c| acc.merge(c))
    })
}

/// Turns tallies into an estimate. Never reports `exact_zero`.
pub fn estimate_from_counts(counts: OutageCounts) -> Result<OpscEstimate> {
    if counts.transmissions == 0 {
        return Err(Error::NoTransmissionEvents);
    }
    Ok(OpscEstimate {
        value: counts.outages as f64 / counts.transmissions as f64,
        method: OpscMethod::MonteCarlo,
        std_error: binomial_std_error(counts.outages, counts.transmissions),
        samples_or_nodes: counts.draws,
        exact_zero: false,
        events: counts.outages,
        trials: counts.transmissions,
    })
}

/// Monte Carlo OPSC from `samples` independent `(γ_b, γ_e)` pairs.
///
/// With a threshold the estimate is `#{γ_th < γ_b < γ_eq} / #{γ_b > γ_th}`.
/// Deterministic for a fixed stream; uses [`ShardPlan::for_samples`].
pub fn opsc_monte_carlo(s: &SecrecyScenario, samples: u64, base: &RngStream) -> Result<OpscEstimate> {
    if samples < MIN_MONTE_CARLO_SAMPLES {
        return Err(Error::invalid("samples", "need at least 1000 Monte Carlo samples"));
    }
    let counts = monte_carlo_counts(s, &ShardPlan::for_samples(samples), base)?;
    estimate_from_counts(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::secrecy::{max_secrecy_rate, perfect_secrecy_check, rayleigh_opsc_baseline};
    use crate::units::db_to_linear;
    use proptest::prelude::*;

    fn tw(delta: f64) -> FadingSpec {
        FadingSpec::two_wave(delta).unwrap()
    }

    fn scenario(db: f64, bob: f64, de: f64, eve: f64, rate: f64) -> SecrecyScenario {
        SecrecyScenario::new(tw(db), tw(de), bob, eve, rate).unwrap()
    }

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn agree(a: &OpscEstimate, mc: &OpscEstimate, extra: f64) -> bool {
        (a.value - mc.value).abs() <= 3.0 * mc.std_error + extra
    }

    #[test]
    fn below_max_rate_is_exact_zero() {
        let s = scenario(0.4, 10.0, 0.6, 1.0, 1.0);
        assert!(s.rate() < max_secrecy_rate(&s).unwrap());
        let e = opsc_closed_form(&s, &quad()).unwrap();
        assert_eq!(e.value, 0.0);
        assert!(e.exact_zero);
        assert_eq!(e.method, OpscMethod::ExactZeroCertificate);
        assert_eq!(e.upper_bound(0.95), 0.0);
    }

    #[test]
    fn kink_next_to_bob_floor_converges() {
        // F_b rises like a square root from Bob's floor; rounding there once
        // left a zero piece that could not pass a relative test
        let s = scenario(0.6, 31.622776601683793, 0.4, 1.0, 2.6);
        let e = opsc_closed_form(&s, &quad()).unwrap();
        assert!((e.value - 0.021751995221472618).abs() < 1e-10, "{}", e.value);
    }

    #[test]
    fn touching_supports_give_zero() {
        // γ_b^min = 0.7·6 = 4.2 = 2·1.6 + 1 = γ_eq^max: not certified, no overlap
        let s = scenario(0.3, 6.0, 0.6, 1.0, 1.0);
        assert!(!perfect_secrecy_check(&s));
        for q in [
            opsc_classical_integral(&s, &quad()).unwrap(),
            opsc_reliability_integral(&s, &quad()).unwrap(),
        ] {
            assert!(q.value.abs() < 1e-15, "{}", q.value);
        }
    }

    #[test]
    fn certain_outage_is_one() {
        // γ_eq^min = 2^R(γ_e^min + 1) - 1 = 8·1.5 - 1 = 11 > γ_b^max = 3
        let s = scenario(0.5, 2.0, 0.5, 1.0, 3.0);
        let e = opsc_closed_form(&s, &quad()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-12, "{}", e.value);
    }

    #[test]
    fn matches_brute_force_oracle() {
        let s = scenario(0.5, db_to_linear(12.0), 0.5, db_to_linear(5.0), 1.0);
        let cf = opsc_closed_form(&s, &quad()).unwrap();
        let mc = opsc_monte_carlo(&s, 10_000_000, &RngStream::new(2024, 0)).unwrap();
        assert!(cf.value > 0.0 && cf.value < 1.0);
        assert!(agree(&cf, &mc, 0.0), "{} vs {} ± {}", cf.value, mc.value, mc.std_error);
    }

    #[test]
    fn reliability_form_matches_brute_force() {
        let s = scenario(1.0, 10.0, 0.6, 1.0, 1.5).with_snr_threshold(4.0).unwrap();
        let cf = opsc_closed_form(&s, &quad()).unwrap();
        let mc = opsc_monte_carlo(&s, 4_000_000, &RngStream::new(77, 0)).unwrap();
        assert!(cf.value > 0.0);
        assert!(agree(&cf, &mc, 0.0), "{} vs {} ± {}", cf.value, mc.value, mc.std_error);
        assert!(mc.trials < mc.samples_or_nodes);
    }

    #[test]
    fn rayleigh_bob_against_two_wave_eve() {
        let s = SecrecyScenario::new(FadingSpec::Rayleigh, tw(0.7), 6.0, 1.0, 0.5).unwrap();
        let cf = opsc_closed_form(&s, &quad()).unwrap();
        let mc = opsc_monte_carlo(&s, 4_000_000, &RngStream::new(78, 0)).unwrap();
        assert!(agree(&cf, &mc, 0.0), "{} vs {} ± {}", cf.value, mc.value, mc.std_error);
    }

    #[test]
    fn deterministic_channels() {
        // Eve fixed at γ_e = 1, R = 1: outage iff γ_b < 3.
        let one = FadingSpec::n_ray([1.0]).unwrap();
        let s = SecrecyScenario::new(tw(0.5), one.clone(), 3.0, 1.0, 1.0).unwrap();
        let cf = opsc_closed_form(&s, &quad()).unwrap();
        assert!((cf.value - 0.5).abs() < 1e-15);
        let s = SecrecyScenario::new(one, tw(0.5), 4.0, 1.0, 0.0).unwrap();
        // γ_b = 4 > γ_e^max = 1.5
        assert!(opsc_closed_form(&s, &quad()).unwrap().exact_zero);
    }

    #[test]
    fn unsupported_pairs() {
        let s = SecrecyScenario::new(FadingSpec::alpha_family(3, 0.2).unwrap(), tw(0.5), 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(opsc_closed_form(&s, &quad()), Err(Error::UnsupportedPair(_))));
        let s = SecrecyScenario::new(tw(0.5), FadingSpec::Rayleigh, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(opsc_closed_form(&s, &quad()), Err(Error::UnsupportedPair(_))));
        let s = SecrecyScenario::new(FadingSpec::rician(2.0).unwrap(), tw(0.5), 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(opsc_closed_form(&s, &quad()), Err(Error::UnsupportedPair(_))));
    }

    #[test]
    fn threshold_above_support() {
        let s = scenario(0.5, 1.0, 0.5, 1.0, 1.0).with_snr_threshold(1.5).unwrap();
        assert!(matches!(
            opsc_closed_form(&s, &quad()),
            Err(Error::ThresholdExceedsSupport { .. })
        ));
    }

    #[test]
    fn reduction_at_zero_threshold() {
        for (db, de, bob, rate) in [(0.5, 0.5, 5.0, 1.0), (1.0, 0.3, 3.0, 0.2), (0.2, 0.9, 8.0, 2.0)] {
            let s = scenario(db, bob, de, 1.0, rate);
            let a = opsc_classical_integral(&s, &quad()).unwrap().value;
            let b = opsc_reliability_integral(&s, &quad()).unwrap().value;
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn threshold_below_floor_changes_nothing() {
        let s = scenario(0.4, db_to_linear(7.0), 0.6, 1.0, 1.3);
        let floor = s.bob_bounds().min;
        let classical = opsc_closed_form(&s, &quad()).unwrap().value;
        let th = opsc_closed_form(&s.with_snr_threshold(0.9 * floor).unwrap(), &quad()).unwrap().value;
        assert!(classical > 0.0);
        assert!((classical - th).abs() < 1e-9, "{classical} vs {th}");
    }

    #[test]
    fn strict_boundary_around_max_rate() {
        let s = scenario(0.4, 10.0, 0.6, 1.0, 0.0);
        let r = max_secrecy_rate(&s).unwrap();
        let below = opsc_closed_form(&s.clone().with_rate(r - 1e-9).unwrap(), &quad()).unwrap();
        assert!(below.exact_zero);
        let above = opsc_closed_form(&s.with_rate(r + 1e-3).unwrap(), &quad()).unwrap();
        assert!(above.value > 0.0 && !above.exact_zero);
    }

    #[test]
    fn monte_carlo_zero_under_certificate() {
        let s = scenario(0.5, 8.1, 0.5, 1.0, 1.0);
        assert!(perfect_secrecy_check(&s));
        let mc = opsc_monte_carlo(&s, 1_000_000, &RngStream::new(5, 0)).unwrap();
        assert_eq!(mc.events, 0);
        assert_eq!(mc.value, 0.0);
        assert!(!mc.exact_zero);
        let ub = mc.upper_bound(0.95);
        assert!(ub > 0.0 && ub < 1e-5);
    }

    #[test]
    fn monte_carlo_symmetry() {
        let s = SecrecyScenario::new(FadingSpec::Rayleigh, FadingSpec::Rayleigh, 2.0, 2.0, 0.0).unwrap();
        let mc = opsc_monte_carlo(&s, 1_000_000, &RngStream::new(6, 0)).unwrap();
        assert!((mc.value - 0.5).abs() < 3.0 * mc.std_error);
    }

    #[test]
    fn monte_carlo_rayleigh_baseline() {
        let s = SecrecyScenario::new(FadingSpec::Rayleigh, FadingSpec::Rayleigh, 4.0, 1.0, 1.0).unwrap();
        let mc = opsc_monte_carlo(&s, 1_000_000, &RngStream::new(7, 0)).unwrap();
        let exact = rayleigh_opsc_baseline(4.0, 1.0, 1.0);
        assert!((mc.value - exact).abs() < 3.0 * mc.std_error, "{} vs {exact}", mc.value);
        let (lo, hi) = mc.wilson_interval(0.999).unwrap();
        assert!(lo < exact && exact < hi);
    }

    #[test]
    fn monte_carlo_errors() {
        let s = scenario(0.5, 1.0, 0.5, 1.0, 1.0);
        assert!(opsc_monte_carlo(&s, 999, &RngStream::new(1, 1)).is_err());
        let s = s.with_snr_threshold(1.5).unwrap();
        assert_eq!(
            opsc_monte_carlo(&s, 10_000, &RngStream::new(1, 1)),
            Err(Error::NoTransmissionEvents)
        );
    }

    #[test]
    fn monte_carlo_is_reproducible_and_plan_driven() {
        let s = scenario(0.5, 3.0, 0.5, 1.0, 0.5);
        let base = RngStream::new(10, 0);
        let a = opsc_monte_carlo(&s, 200_000, &base).unwrap();
        let b = opsc_monte_carlo(&s, 200_000, &base).unwrap();
        assert_eq!(a, b);
        let plan = ShardPlan::for_samples(200_000);
        assert_eq!(plan.shards(), 4);
        assert_eq!((0..4).map(|i| plan.shard_len(i)).sum::<u64>(), 200_000);
        // reversed scheduling gives the same tallies
        let rev = (0..plan.shards())
            .rev()
            .map(|i| shard_counts(&s, &plan, i, &base).unwrap())
            .fold(OutageCounts::default(), OutageCounts::merge);
        assert_eq!(rev, monte_carlo_counts(&s, &plan, &base).unwrap());
    }

    #[test]
    fn monte_carlo_common_random_numbers_monotone() {
        // Same stream at every grid point: the estimate moves monotonically.
        let base = RngStream::new(11, 0);
        let mut last = -1.0;
        for i in 0..10 {
            let s = scenario(0.5, 4.0, 0.5, 1.0, 0.2 * i as f64);
            let v = opsc_monte_carlo(&s, 20_000, &base).unwrap().value;
            assert!(v >= last);
            last = v;
        }
        let mut last = 2.0;
        for i in 0..10 {
            let s = scenario(0.5, 1.0 + i as f64, 0.5, 1.0, 1.0);
            let v = opsc_monte_carlo(&s, 20_000, &base).unwrap().value;
            assert!(v <= last);
            last = v;
        }
    }

    #[test]
    fn closed_form_monotone_in_rate_and_snrs() {
        let mut last = -1.0;
        for i in 0..30 {
            let v = opsc_closed_form(&scenario(0.5, 5.0, 0.5, 1.0, 0.1 * i as f64), &quad())
                .unwrap()
                .value;
            assert!(v >= last - 1e-12);
            last = v;
        }
        let mut last = -1.0;
        for i in 0..30 {
            let v = opsc_closed_form(&scenario(0.5, 5.0, 0.5, 0.2 + 0.1 * i as f64, 1.0), &quad())
                .unwrap()
                .value;
            assert!(v >= last - 1e-12);
            last = v;
        }
        let mut last = 2.0;
        for i in 0..30 {
            let v = opsc_closed_form(&scenario(0.5, 1.0 + 0.5 * i as f64, 0.5, 1.0, 1.0), &quad())
                .unwrap()
                .value;
            assert!(v <= last + 1e-12);
            last = v;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn certificate_soundness(
            db in 0.01f64..0.95, de in 0.01f64..=1.0,
            bob_db in 0.0f64..30.0, eve_db in -5.0f64..10.0,
            rate in 0.0f64..4.0, seed in any::<u64>(),
        ) {
            let s = scenario(db, db_to_linear(bob_db), de, db_to_linear(eve_db), rate);
            if perfect_secrecy_check(&s) {
                let mc = opsc_monte_carlo(&s, 20_000, &RngStream::new(seed, 0)).unwrap();
                prop_assert_eq!(mc.events, 0);
            } else if rate > max_secrecy_rate(&s).unwrap() {
                prop_assert!(opsc_closed_form(&s, &quad()).unwrap().value > 0.0);
            }
        }
    }
}
