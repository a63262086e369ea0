//! Plain-text scenario description.
//!
//! One `key = value` pair per line, `#` starts a comment. Keys:
//!
//! ```text
//! bob.model          two_wave | n_ray | rayleigh | rician
//! bob.delta          two_wave balance in (0, 1]
//! bob.amplitudes     n_ray amplitudes, comma separated
//! bob.alpha, bob.n   n_ray family: one unit ray plus n - 1 rays of amplitude alpha
//! bob.k_factor       rician K, linear
//! eve.*              same shape as bob.*
//! snr_bob_db         average SNR at Bob
//! snr_eve_db         average SNR at Eve
//! rate_bits          target secrecy rate, bits per channel use
//! snr_threshold_db   transmission threshold, or `none` (default)
//! normalization      per_channel (default) | shared_omega
//! seed               Monte Carlo master seed (default 1)
//! samples            Monte Carlo sample count (default 1000000)
//! ```
//!
//! Parsing is strict: unknown keys, duplicates and parameters that do not
//! belong to the chosen model are errors. [`ScenarioFile`]'s `Display` output
//! parses back to an equal value.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use raysec_core::units::db_to_linear;
use raysec_core::{FadingSpec, Normalization, SecrecyScenario};

use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

/// Channel law as written in a scenario file.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelConfig {
    TwoWave { delta: f64 },
    NRay { amplitudes: Vec<f64> },
    /// `n_ray` given through `alpha` and `n`; kept in this form so it
    /// survives a round trip and can be resized by sweeps.
    Alpha { alpha: f64, n: usize },
    Rayleigh,
    Rician { k_factor: f64 },
}

impl ChannelConfig {
    pub fn to_spec(&self) -> raysec_core::Result<FadingSpec> {
        match self {
            ChannelConfig::TwoWave { delta } => FadingSpec::two_wave(*delta),
            ChannelConfig::NRay { amplitudes } => FadingSpec::n_ray(amplitudes.clone()),
            ChannelConfig::Alpha { alpha, n } => FadingSpec::alpha_family(*n, *alpha),
            ChannelConfig::Rayleigh => Ok(FadingSpec::Rayleigh),
            ChannelConfig::Rician { k_factor } => FadingSpec::rician(*k_factor),
        }
    }

    fn model(&self) -> &'static str {
        match self {
            ChannelConfig::TwoWave { .. } => "two_wave",
            ChannelConfig::NRay { .. } | ChannelConfig::Alpha { .. } => "n_ray",
            ChannelConfig::Rayleigh => "rayleigh",
            ChannelConfig::Rician { .. } => "rician",
        }
    }

    fn write(&self, who: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{who}.model = {}", self.model())?;
        match self {
            ChannelConfig::TwoWave { delta } => writeln!(f, "{who}.delta = {delta}"),
            ChannelConfig::NRay { amplitudes } => {
                let list: Vec<String> = amplitudes.iter().map(|a| a.to_string()).collect();
                writeln!(f, "{who}.amplitudes = {}", list.join(", "))
            }
            ChannelConfig::Alpha { alpha, n } => {
                writeln!(f, "{who}.alpha = {alpha}")?;
                writeln!(f, "{who}.n = {n}")
            }
            ChannelConfig::Rayleigh => Ok(()),
            ChannelConfig::Rician { k_factor } => writeln!(f, "{who}.k_factor = {k_factor}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizationConfig {
    PerChannel,
    SharedOmega,
}

impl NormalizationConfig {
    fn as_str(self) -> &'static str {
        match self {
            NormalizationConfig::PerChannel => "per_channel",
            NormalizationConfig::SharedOmega => "shared_omega",
        }
    }
}

impl From<NormalizationConfig> for Normalization {
    fn from(n: NormalizationConfig) -> Self {
        match n {
            NormalizationConfig::PerChannel => Normalization::PerChannel,
            NormalizationConfig::SharedOmega => Normalization::SharedOmega,
        }
    }
}

/// Parsed scenario file. SNRs are kept in dB as written.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub bob: ChannelConfig,
    pub eve: ChannelConfig,
    pub snr_bob_db: f64,
    pub snr_eve_db: f64,
    pub rate_bits: f64,
    /// `None` selects the classical formulation.
    pub snr_threshold_db: Option<f64>,
    pub normalization: NormalizationConfig,
    pub seed: u64,
    pub samples: u64,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(line_no, "expected `key = value`"))?;
            let key = key.trim();
            let value = value.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(Error::parse(line_no, format!("unknown key `{key}`")));
            }
            if value.is_empty() {
                return Err(Error::parse(line_no, format!("`{key}` has no value")));
            }
            if let Some((first, _)) = entries.insert(key, (line_no, value)) {
                return Err(Error::parse(line_no, format!("`{key}` already set on line {first}")));
            }
        }
        let mut doc = Entries { entries };
        let bob = doc.channel("bob")?;
        let eve = doc.channel("eve")?;
        let snr_bob_db = doc.required_f64("snr_bob_db")?;
        let snr_eve_db = doc.required_f64("snr_eve_db")?;
        let rate_bits = doc.required_f64("rate_bits")?;
        let snr_threshold_db = match doc.take("snr_threshold_db") {
            None => None,
            Some((_, "none")) => None,
            Some((line, v)) => Some(parse_f64(line, "snr_threshold_db", v)?),
        };
        let normalization = match doc.take("normalization") {
            None | Some((_, "per_channel")) => NormalizationConfig::PerChannel,
            Some((_, "shared_omega")) => NormalizationConfig::SharedOmega,
            Some((line, v)) => {
                return Err(Error::parse(
                    line,
                    format!("normalization must be per_channel or shared_omega, got `{v}`"),
                ))
            }
        };
        let seed = doc.optional_int("seed")?.unwrap_or(DEFAULT_SEED);
        let samples = doc.optional_int("samples")?.unwrap_or(DEFAULT_SAMPLES);
        Ok(ScenarioFile {
            bob,
            eve,
            snr_bob_db,
            snr_eve_db,
            rate_bits,
            snr_threshold_db,
            normalization,
            seed,
            samples,
        })
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Linear-scale scenario for the analysis routines.
    pub fn to_scenario(&self) -> raysec_core::Result<SecrecyScenario> {
        let s = SecrecyScenario::new(
            self.bob.to_spec()?,
            self.eve.to_spec()?,
            db_to_linear(self.snr_bob_db),
            db_to_linear(self.snr_eve_db),
            self.rate_bits,
        )?;
        let s = match self.snr_threshold_db {
            Some(db) => s.with_snr_threshold(db_to_linear(db))?,
            None => s,
        };
        s.with_normalization(self.normalization.into())
    }
}

impl FromStr for ScenarioFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for ScenarioFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bob.write("bob", f)?;
        self.eve.write("eve", f)?;
        writeln!(f, "snr_bob_db = {}", self.snr_bob_db)?;
        writeln!(f, "snr_eve_db = {}", self.snr_eve_db)?;
        writeln!(f, "rate_bits = {}", self.rate_bits)?;
        match self.snr_threshold_db {
            Some(t) => writeln!(f, "snr_threshold_db = {t}")?,
            None => writeln!(f, "snr_threshold_db = none")?,
        }
        writeln!(f, "normalization = {}", self.normalization.as_str())?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "samples = {}", self.samples)
    }
}

const KNOWN_KEYS: &[&str] = &[
    "bob.model",
    "bob.delta",
    "bob.amplitudes",
    "bob.alpha",
    "bob.n",
    "bob.k_factor",
    "eve.model",
    "eve.delta",
    "eve.amplitudes",
    "eve.alpha",
    "eve.n",
    "eve.k_factor",
    "snr_bob_db",
    "snr_eve_db",
    "rate_bits",
    "snr_threshold_db",
    "normalization",
    "seed",
    "samples",
];

const PARAMS: [&str; 5] = ["delta", "amplitudes", "alpha", "n", "k_factor"];

struct Entries<'a> {
    entries: BTreeMap<&'a str, (usize, &'a str)>,
}

impl<'a> Entries<'a> {
    fn take(&mut self, key: &str) -> Option<(usize, &'a str)> {
        self.entries.remove(key)
    }

    fn required_f64(&mut self, key: &str) -> Result<f64> {
        let (line, v) = self
            .take(key)
            .ok_or_else(|| Error::MissingKey(key.to_string()))?;
        parse_f64(line, key, v)
    }

    fn optional_int<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        self.take(key)
            .map(|(line, v)| {
                v.parse()
                    .map_err(|_| Error::parse(line, format!("`{key}` must be a non-negative integer")))
            })
            .transpose()
    }

    fn channel(&mut self, who: &str) -> Result<ChannelConfig> {
        let model_key = format!("{who}.model");
        let (model_line, model) = self
            .take(&model_key)
            .ok_or_else(|| Error::MissingKey(model_key.clone()))?;
        let mut params: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for p in PARAMS {
            if let Some(entry) = self.take(&format!("{who}.{p}")) {
                params.insert(p, entry);
            }
        }
        let present: Vec<&str> = params.keys().copied().collect();
        let expect = |allowed: &[&str]| -> Result<()> {
            if present == allowed {
                return Ok(());
            }
            let shown: Vec<String> = allowed.iter().map(|p| format!("{who}.{p}")).collect();
            let shown = if shown.is_empty() { "no parameters".to_string() } else { shown.join(" + ") };
            Err(Error::parse(model_line, format!("{who}.model = {model} takes {shown}")))
        };
        let num = |p: &str| -> Result<f64> {
            let (line, v) = params[p];
            parse_f64(line, p, v)
        };
        match model {
            "two_wave" => {
                expect(&["delta"])?;
                Ok(ChannelConfig::TwoWave { delta: num("delta")? })
            }
            "rayleigh" => {
                expect(&[])?;
                Ok(ChannelConfig::Rayleigh)
            }
            "rician" => {
                expect(&["k_factor"])?;
                Ok(ChannelConfig::Rician {
                    k_factor: num("k_factor")?,
                })
            }
            "n_ray" if params.contains_key("amplitudes") => {
                expect(&["amplitudes"])?;
                let (line, v) = params["amplitudes"];
                let amplitudes = v
                    .split(',')
                    .map(|a| parse_f64(line, "amplitudes", a.trim()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ChannelConfig::NRay { amplitudes })
            }
            "n_ray" => {
                // BTreeMap order
                expect(&["alpha", "n"])?;
                let (line, v) = params["n"];
                let n = v
                    .parse()
                    .map_err(|_| Error::parse(line, format!("`{who}.n` must be a positive integer")))?;
                Ok(ChannelConfig::Alpha { alpha: num("alpha")?, n })
            }
            other => Err(Error::parse(
                model_line,
                format!("unknown model `{other}` (two_wave, n_ray, rayleigh, rician)"),
            )),
        }
    }
}

fn parse_f64(line: usize, key: &str, v: &str) -> Result<f64> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::parse(line, format!("`{key}` must be a finite number, got `{v}`"))),
    }
}
