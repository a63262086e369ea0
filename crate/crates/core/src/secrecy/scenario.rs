use crate::error::{Error, Result};
use crate::fading::{FadingSpec, SnrBounds};

/// How each channel's instantaneous SNR is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Each channel divides by its own mean power, so the mean SNR is exactly
    /// the configured average.
    #[default]
    PerChannel,
    /// Both channels divide by Eve's total ray power `Ω`. Bob must see a
    /// prefix of Eve's rays; his effective mean SNR drops to `γ̄_b·Ω_b/Ω`.
    SharedOmega,
}

/// A Bob/Eve wiretap configuration. SNRs and the threshold are linear, the
/// rate is in bits per channel use.
///
/// A zero `snr_threshold` selects the classical outage formulation; a
/// positive one conditions on `γ_b > γ_th`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecrecyScenario {
    bob: FadingSpec,
    eve: FadingSpec,
    mean_snr_bob: f64,
    mean_snr_eve: f64,
    rate: f64,
    snr_threshold: f64,
    normalization: Normalization,
}

impl SecrecyScenario {
    pub fn new(
        bob: FadingSpec,
        eve: FadingSpec,
        mean_snr_bob: f64,
        mean_snr_eve: f64,
        rate: f64,
    ) -> Result<Self> {
        let s = SecrecyScenario {
            bob,
            eve,
            mean_snr_bob,
            mean_snr_eve,
            rate,
            snr_threshold: 0.0,
            normalization: Normalization::PerChannel,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_snr_threshold(mut self, snr_threshold: f64) -> Result<Self> {
        self.snr_threshold = snr_threshold;
        self.validate()?;
        Ok(self)
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Result<Self> {
        self.normalization = normalization;
        self.validate()?;
        Ok(self)
    }

    pub fn with_rate(mut self, rate: f64) -> Result<Self> {
        self.rate = rate;
        self.validate()?;
        Ok(self)
    }

    pub fn with_mean_snr_bob(mut self, mean_snr_bob: f64) -> Result<Self> {
        self.mean_snr_bob = mean_snr_bob;
        self.validate()?;
        Ok(self)
    }

    pub fn with_mean_snr_eve(mut self, mean_snr_eve: f64) -> Result<Self> {
        self.mean_snr_eve = mean_snr_eve;
        self.validate()?;
        Ok(self)
    }

    pub fn with_channels(mut self, bob: FadingSpec, eve: FadingSpec) -> Result<Self> {
        self.bob = bob;
        self.eve = eve;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        self.bob.validate()?;
        self.eve.validate()?;
        for (name, v) in [
            ("mean_snr_bob", self.mean_snr_bob),
            ("mean_snr_eve", self.mean_snr_eve),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, "must be positive and finite"));
            }
        }
        if !(self.rate >= 0.0 && self.rate.is_finite()) {
            return Err(Error::invalid("rate", "must be finite and >= 0"));
        }
        if !(self.snr_threshold >= 0.0 && self.snr_threshold.is_finite()) {
            return Err(Error::invalid("snr_threshold", "must be finite and >= 0"));
        }
        if self.normalization == Normalization::SharedOmega {
            match (&self.bob, &self.eve) {
                (FadingSpec::NRay(b), FadingSpec::NRay(e)) => {
                    if !b.is_prefix_of(e) {
                        return Err(Error::IncompatibleNormalization(
                            "Bob's rays must be the strongest rays of Eve's set",
                        ));
                    }
                }
                _ => {
                    return Err(Error::IncompatibleNormalization(
                        "both channels must be explicit ray channels",
                    ))
                }
            }
        }
        Ok(())
    }

    pub fn bob(&self) -> &FadingSpec {
        &self.bob
    }

    pub fn eve(&self) -> &FadingSpec {
        &self.eve
    }

    pub fn mean_snr_bob(&self) -> f64 {
        self.mean_snr_bob
    }

    pub fn mean_snr_eve(&self) -> f64 {
        self.mean_snr_eve
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn snr_threshold(&self) -> f64 {
        self.snr_threshold
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn is_classical(&self) -> bool {
        self.snr_threshold == 0.0
    }

    /// Mean of Bob's SNR law after normalization.
    pub fn effective_mean_snr_bob(&self) -> f64 {
        match (self.normalization, &self.bob, &self.eve) {
            (Normalization::SharedOmega, FadingSpec::NRay(b), FadingSpec::NRay(e)) => {
                self.mean_snr_bob * b.total_power() / e.total_power()
            }
            _ => self.mean_snr_bob,
        }
    }

    pub fn effective_mean_snr_eve(&self) -> f64 {
        self.mean_snr_eve
    }

    pub fn bob_bounds(&self) -> SnrBounds {
        self.bob.snr_bounds(self.effective_mean_snr_bob())
    }

    pub fn eve_bounds(&self) -> SnrBounds {
        self.eve.snr_bounds(self.effective_mean_snr_eve())
    }

    /// `2^R_s`.
    pub fn rate_factor(&self) -> f64 {
        libm::exp2(self.rate)
    }

    /// Eve's SNR mapped through the secrecy condition.
    #[inline]
    pub fn gamma_eq(&self, gamma_e: f64) -> f64 {
        super::gamma_eq(gamma_e, self.rate)
    }

    /// Eve SNR whose image under [`gamma_eq`](Self::gamma_eq) is `gamma_b`.
    pub fn gamma_eq_inverse(&self, gamma_b: f64) -> f64 {
        let f = self.rate_factor();
        (gamma_b - (f - 1.0)) / f
    }

    /// Bob's closed-form SNR CDF under this scenario's normalization.
    pub fn bob_cdf(&self, gamma: f64) -> Option<f64> {
        self.bob.cdf(gamma, self.effective_mean_snr_bob())
    }

    pub fn eve_cdf(&self, gamma: f64) -> Option<f64> {
        self.eve.cdf(gamma, self.effective_mean_snr_eve())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tw(delta: f64) -> FadingSpec {
        FadingSpec::two_wave(delta).unwrap()
    }

    #[test]
    fn rejects_bad_values() {
        assert!(SecrecyScenario::new(tw(0.5), tw(0.5), 0.0, 1.0, 1.0).is_err());
        assert!(SecrecyScenario::new(tw(0.5), tw(0.5), 1.0, f64::INFINITY, 1.0).is_err());
        assert!(SecrecyScenario::new(tw(0.5), tw(0.5), 1.0, 1.0, -0.1).is_err());
        let s = SecrecyScenario::new(tw(0.5), tw(0.5), 1.0, 1.0, 1.0).unwrap();
        assert!(s.clone().with_snr_threshold(-1.0).is_err());
        assert!(s.with_normalization(Normalization::SharedOmega).is_err());
    }

    #[test]
    fn shared_omega_needs_prefix() {
        let eve = FadingSpec::alpha_family(6, 0.2).unwrap();
        let bob = FadingSpec::alpha_family(3, 0.2).unwrap();
        let s = SecrecyScenario::new(bob, eve.clone(), 10.0, 1.0, 1.0)
            .unwrap()
            .with_normalization(Normalization::SharedOmega)
            .unwrap();
        // Ω_b/Ω = (1 + 2·0.04)/(1 + 5·0.04)
        assert_relative_eq!(s.effective_mean_snr_bob(), 10.0 * 1.08 / 1.2, max_relative = 1e-14);
        assert_eq!(s.effective_mean_snr_eve(), 1.0);

        let other = FadingSpec::alpha_family(3, 0.3).unwrap();
        assert!(matches!(
            SecrecyScenario::new(other, eve, 10.0, 1.0, 1.0)
                .unwrap()
                .with_normalization(Normalization::SharedOmega),
            Err(Error::IncompatibleNormalization(_))
        ));
    }

    #[test]
    fn gamma_eq_inverse_round_trips() {
        let s = SecrecyScenario::new(tw(0.5), tw(0.5), 1.0, 1.0, 1.7).unwrap();
        for g in [0.0, 0.3, 2.0, 11.0] {
            assert_relative_eq!(s.gamma_eq_inverse(s.gamma_eq(g)), g, epsilon = 1e-14);
        }
    }
}
