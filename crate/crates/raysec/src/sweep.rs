//! One-dimensional parameter sweeps.
//!
//! Every grid point reuses the scenario's seed, so Monte Carlo points share
//! random numbers and curves stay smooth. Points run in parallel; the output
//! does not depend on scheduling.

use std::io::Write;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::evaluate::{opsc, throughput_with_fallback, EvalOptions};
use crate::scenario_file::{ChannelConfig, ScenarioFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepVariable {
    #[value(name = "rate")]
    Rate,
    #[value(name = "snr_bob_db")]
    SnrBobDb,
    #[value(name = "snr_threshold_db")]
    SnrThresholdDb,
    /// Resizes both channels; both must be `n_ray` given by `alpha` and `n`.
    #[value(name = "n_rays")]
    NRays,
}

impl SweepVariable {
    /// CSV column name, with unit.
    pub fn column(self) -> &'static str {
        match self {
            SweepVariable::Rate => "rate_bits",
            SweepVariable::SnrBobDb => "snr_bob_db",
            SweepVariable::SnrThresholdDb => "snr_threshold_db",
            SweepVariable::NRays => "n_rays",
        }
    }

    /// `file` with the swept quantity set to `x`.
    pub fn apply(self, file: &ScenarioFile, x: f64) -> Result<ScenarioFile> {
        let mut f = file.clone();
        match self {
            SweepVariable::Rate => f.rate_bits = x,
            SweepVariable::SnrBobDb => f.snr_bob_db = x,
            SweepVariable::SnrThresholdDb => f.snr_threshold_db = Some(x),
            SweepVariable::NRays => {
                let n = x.round();
                if (x - n).abs() > 1e-9 || n < 1.0 {
                    return Err(Error::Usage(format!("n_rays grid point {x} is not a positive integer")));
                }
                for ch in [&mut f.bob, &mut f.eve] {
                    match ch {
                        ChannelConfig::Alpha { n: rays, .. } => *rays = n as usize,
                        _ => {
                            return Err(Error::Usage(
                                "an n_rays sweep needs both channels given as n_ray with alpha and n".into(),
                            ))
                        }
                    }
                }
            }
        }
        Ok(f)
    }
}

/// `steps` evenly spaced points from `from` to `to`, both included, in
/// ascending order.
pub fn grid(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::Usage("a sweep needs at least 2 steps".into()));
    }
    if !(from.is_finite() && to.is_finite()) || from == to {
        return Err(Error::Usage("sweep bounds must be finite and distinct".into()));
    }
    let (lo, hi) = if from < to { (from, to) } else { (to, from) };
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * (i as f64 / last) })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub opsc: f64,
    pub method: &'static str,
    pub std_error: f64,
    pub exact_zero: bool,
    pub throughput: f64,
}

/// Rows sorted by the swept variable.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub column: &'static str,
    pub rows: Vec<SweepRow>,
}

pub const CSV_COLUMNS: [&str; 5] = [
    "opsc_probability",
    "method",
    "std_error_probability",
    "exact_zero",
    "throughput_bits",
];

impl SweepResult {
    pub fn header(&self) -> Vec<&'static str> {
        std::iter::once(self.column).chain(CSV_COLUMNS).collect()
    }

    /// Floats use Rust's shortest round-trip formatting.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header())?;
        for r in &self.rows {
            w.write_record([
                r.x.to_string(),
                r.opsc.to_string(),
                r.method.to_string(),
                r.std_error.to_string(),
                r.exact_zero.to_string(),
                r.throughput.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert(self.column.into(), json!(r.x));
                m.insert("opsc_probability".into(), json!(r.opsc));
                m.insert("method".into(), json!(r.method));
                m.insert("std_error_probability".into(), json!(r.std_error));
                m.insert("exact_zero".into(), json!(r.exact_zero));
                m.insert("throughput_bits".into(), json!(r.throughput));
                Value::Object(m)
            })
            .collect();
        json!({ "variable": self.column, "rows": rows })
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, &self.to_json())?;
        writeln!(out)?;
        Ok(())
    }
}

/// One sweep row for `file`, labelled `x`.
pub fn evaluate_point(file: &ScenarioFile, x: f64, opts: &EvalOptions) -> Result<SweepRow> {
    let s = file.to_scenario()?;
    let o = opsc(&s, opts)?;
    let (throughput, _) = throughput_with_fallback(&s, opts)?;
    Ok(SweepRow {
        x,
        opsc: o.estimate.value,
        method: o.estimate.method.as_str(),
        std_error: o.estimate.std_error,
        exact_zero: o.estimate.exact_zero,
        throughput,
    })
}

/// Evaluates `file` at each point of `grid` (ascending).
///
/// `opts.seed` and `opts.samples` apply to every point.
pub fn run_sweep(file: &ScenarioFile, var: SweepVariable, grid: &[f64], opts: &EvalOptions) -> Result<SweepResult> {
    let rows = grid
        .par_iter()
        .map(|&x| evaluate_point(&var.apply(file, x)?, x, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        column: var.column(),
        rows,
    })
}

/// Trace computed from a closed-form expression of the swept variable.
pub fn analytic_sweep(
    column: &'static str,
    method: &'static str,
    grid: &[f64],
    f: impl Fn(f64) -> (f64, f64),
) -> SweepResult {
    let rows = grid
        .iter()
        .map(|&x| {
            let (opsc, throughput) = f(x);
            SweepRow {
                x,
                opsc,
                method,
                std_error: 0.0,
                exact_zero: false,
                throughput,
            }
        })
        .collect();
    SweepResult { column, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario_file::NormalizationConfig;

    fn base() -> ScenarioFile {
        ScenarioFile {
            bob: ChannelConfig::TwoWave { delta: 0.4 },
            eve: ChannelConfig::TwoWave { delta: 0.6 },
            snr_bob_db: 10.0,
            snr_eve_db: 0.0,
            rate_bits: 1.0,
            snr_threshold_db: None,
            normalization: NormalizationConfig::PerChannel,
            seed: 5,
            samples: 20_000,
        }
    }

    #[test]
    fn grid_endpoints_and_order() {
        let g = grid(5.0, 0.0, 11).unwrap();
        assert_eq!(g.first(), Some(&0.0));
        assert_eq!(g.last(), Some(&5.0));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!((g[3] - 1.5).abs() < 1e-15);
        assert!(grid(0.0, 1.0, 1).is_err());
        assert!(grid(1.0, 1.0, 4).is_err());
    }

    #[test]
    fn rate_sweep_is_monotone_with_breakpoint() {
        let g = grid(0.0, 5.0, 26).unwrap();
        let r = run_sweep(&base(), SweepVariable::Rate, &g, &EvalOptions::new(20_000, 5)).unwrap();
        assert_eq!(r.rows.len(), 26);
        let r_max = (7.0f64 / 2.6).log2();
        for row in &r.rows {
            assert_eq!(row.exact_zero, row.x < r_max, "rate {}", row.x);
            assert_eq!(row.throughput, row.x);
        }
        assert!(r.rows.windows(2).all(|w| w[0].opsc <= w[1].opsc + 1e-12));
    }

    #[test]
    fn n_rays_needs_alpha_channels() {
        assert!(matches!(SweepVariable::NRays.apply(&base(), 3.0), Err(Error::Usage(_))));
        let mut f = base();
        f.bob = ChannelConfig::Alpha { alpha: 0.2, n: 2 };
        f.eve = ChannelConfig::Alpha { alpha: 0.2, n: 2 };
        let g = SweepVariable::NRays.apply(&f, 4.0).unwrap();
        assert_eq!(g.bob, ChannelConfig::Alpha { alpha: 0.2, n: 4 });
        assert_eq!(g.eve, ChannelConfig::Alpha { alpha: 0.2, n: 4 });
        assert!(SweepVariable::NRays.apply(&f, 2.5).is_err());
    }

    #[test]
    fn csv_and_json_shapes() {
        let g = grid(0.0, 2.0, 3).unwrap();
        let r = run_sweep(&base(), SweepVariable::Rate, &g, &EvalOptions::new(20_000, 5)).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("rate_bits,opsc_probability,method,std_error_probability,exact_zero,throughput_bits")
        );
        assert_eq!(lines.count(), 3);
        let v = r.to_json();
        assert_eq!(v["variable"], "rate_bits");
        assert_eq!(v["rows"].as_array().unwrap().len(), 3);
        assert_eq!(v["rows"][0]["exact_zero"], true);
    }
}
