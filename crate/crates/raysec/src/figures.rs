//! Data behind the standard OPSC figures.
//!
//! Each preset pins its grid, seed and default sample count, and writes one
//! CSV per trace plus a gnuplot script that plots them. Grids bracket the
//! zero-outage breakpoint of every ray-based trace.

use std::fs;
use std::path::{Path, PathBuf};

use raysec_core::secrecy::rayleigh_opsc_baseline;
use raysec_core::units::db_to_linear;
use raysec_core::QuadratureSpec;

use crate::error::Result;
use crate::evaluate::EvalOptions;
use crate::scenario_file::{ChannelConfig, NormalizationConfig, ScenarioFile, DEFAULT_SAMPLES};
use crate::sweep::{analytic_sweep, grid, run_sweep, SweepResult, SweepVariable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// OPSC against rate, two-wave and Rayleigh, Eve at 0 dB.
    Fig2,
    /// OPSC against Bob's SNR, two-wave and Rayleigh, Eve at 7 dB.
    Fig3,
    /// Classical against thresholded OPSC, Eve two-wave 0.6 at 0 dB.
    Fig4,
    /// Growing ray count at both ends.
    Fig5,
    /// Fewer rays at Bob under a shared power budget.
    Fig6,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Fig2, Preset::Fig3, Preset::Fig4, Preset::Fig5, Preset::Fig6];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
        }
    }

    pub fn seed(self) -> u64 {
        match self {
            Preset::Fig2 => 0x5eed_0002,
            Preset::Fig3 => 0x5eed_0003,
            Preset::Fig4 => 0x5eed_0004,
            Preset::Fig5 => 0x5eed_0005,
            Preset::Fig6 => 0x5eed_0006,
        }
    }

    fn x_label(self) -> &'static str {
        match self {
            Preset::Fig2 | Preset::Fig4 => "R_s [bits]",
            _ => "mean SNR at Bob [dB]",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOptions {
    pub samples: u64,
    /// Replaces the preset's pinned seed.
    pub seed: Option<u64>,
    pub quadrature: QuadratureSpec,
}

impl Default for FigureOptions {
    fn default() -> Self {
        FigureOptions {
            samples: DEFAULT_SAMPLES,
            seed: None,
            quadrature: QuadratureSpec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    /// File stem, unique within the preset.
    pub name: String,
    pub title: String,
    pub result: SweepResult,
}

struct Builder {
    opts: EvalOptions,
    traces: Vec<Trace>,
}

impl Builder {
    fn sweep(&mut self, name: &str, title: &str, file: ScenarioFile, var: SweepVariable, grid: &[f64]) -> Result<()> {
        let result = run_sweep(&file, var, grid, &self.opts)?;
        self.push(name, title, result);
        Ok(())
    }

    fn push(&mut self, name: &str, title: &str, result: SweepResult) {
        self.traces.push(Trace {
            name: name.to_string(),
            title: title.to_string(),
            result,
        });
    }
}

fn scenario(bob: ChannelConfig, eve: ChannelConfig, snr_bob_db: f64, snr_eve_db: f64, rate_bits: f64) -> ScenarioFile {
    ScenarioFile {
        bob,
        eve,
        snr_bob_db,
        snr_eve_db,
        rate_bits,
        snr_threshold_db: None,
        normalization: NormalizationConfig::PerChannel,
        seed: 0,
        samples: 0,
    }
}

fn two_wave(delta: f64) -> ChannelConfig {
    ChannelConfig::TwoWave { delta }
}

fn alpha(alpha: f64, n: usize) -> ChannelConfig {
    ChannelConfig::Alpha { alpha, n }
}

/// Computes every trace of `preset`.
pub fn traces(preset: Preset, opts: &FigureOptions) -> Result<Vec<Trace>> {
    let mut b = Builder {
        opts: EvalOptions {
            samples: opts.samples,
            seed: opts.seed.unwrap_or(preset.seed()),
            quadrature: opts.quadrature,
        },
        traces: Vec::new(),
    };
    match preset {
        Preset::Fig2 => {
            let rates = grid(0.0, 5.0, 101)?;
            for snr_b in [10.0, 15.0] {
                for (db, de) in [(0.4, 0.6), (0.6, 0.4)] {
                    b.sweep(
                        &format!("two_wave_b{snr_b}db_db{db}_de{de}"),
                        &format!("two-wave, {snr_b} dB, D_b={db}, D_e={de}"),
                        scenario(two_wave(db), two_wave(de), snr_b, 0.0, 0.0),
                        SweepVariable::Rate,
                        &rates,
                    )?;
                }
                let gb = db_to_linear(snr_b);
                let r = analytic_sweep("rate_bits", "rayleigh_closed_form", &rates, |rate| {
                    (rayleigh_opsc_baseline(gb, 1.0, rate), rate)
                });
                b.push(&format!("rayleigh_b{snr_b}db"), &format!("Rayleigh, {snr_b} dB"), r);
            }
        }
        Preset::Fig3 => {
            let snrs = grid(0.0, 40.0, 81)?;
            for (db, de) in [(0.4, 0.6), (0.6, 0.4), (1.0, 0.6)] {
                b.sweep(
                    &format!("two_wave_db{db}_de{de}"),
                    &format!("two-wave, D_b={db}, D_e={de}"),
                    scenario(two_wave(db), two_wave(de), 0.0, 7.0, 1.0),
                    SweepVariable::SnrBobDb,
                    &snrs,
                )?;
            }
            let ge = db_to_linear(7.0);
            let r = analytic_sweep("snr_bob_db", "rayleigh_closed_form", &snrs, |x| {
                (rayleigh_opsc_baseline(db_to_linear(x), ge, 1.0), 1.0)
            });
            b.push("rayleigh", "Rayleigh", r);
        }
        Preset::Fig4 => {
            let rates = grid(0.0, 5.0, 101)?;
            for (snr_b, db, thresholds) in [(7.0, 0.4, [None, Some(3.0), Some(6.0)]), (10.0, 1.0, [None, Some(6.0), Some(10.0)])] {
                for th in thresholds {
                    let mut f = scenario(two_wave(db), two_wave(0.6), snr_b, 0.0, 0.0);
                    f.snr_threshold_db = th;
                    let (name, title) = match th {
                        None => (
                            format!("b{snr_b}db_db{db}_classical"),
                            format!("{snr_b} dB, D_b={db}, classical"),
                        ),
                        Some(t) => (
                            format!("b{snr_b}db_db{db}_th{t}db"),
                            format!("{snr_b} dB, D_b={db}, threshold {t} dB"),
                        ),
                    };
                    b.sweep(&name, &title, f, SweepVariable::Rate, &rates)?;
                }
            }
        }
        Preset::Fig5 => {
            let snrs = grid(0.0, 40.0, 21)?;
            for (a, rate) in [(0.2, 0.5), (0.25, 3.0)] {
                for n in 2..=5 {
                    b.sweep(
                        &format!("alpha{a}_r{rate}_n{n}"),
                        &format!("alpha={a}, R_s={rate}, N={n}"),
                        scenario(alpha(a, n), alpha(a, n), 0.0, 0.0, rate),
                        SweepVariable::SnrBobDb,
                        &snrs,
                    )?;
                }
            }
        }
        Preset::Fig6 => {
            let snrs = grid(FIG6_SNR_BOB_DB.0, FIG6_SNR_BOB_DB.1, FIG6_SNR_BOB_DB.2)?;
            for n_b in 2..=5 {
                let mut shared = scenario(alpha(0.2, n_b), alpha(0.2, FIG6_N_EVE), 0.0, 0.0, 1.0);
                shared.normalization = NormalizationConfig::SharedOmega;
                b.sweep(
                    &format!("shared_nb{n_b}"),
                    &format!("N_b={n_b}, shared power"),
                    shared,
                    SweepVariable::SnrBobDb,
                    &snrs,
                )?;
                b.sweep(
                    &format!("ideal_nb{n_b}"),
                    &format!("N_b={n_b}, Omega_b=Omega"),
                    scenario(alpha(0.2, n_b), alpha(0.2, FIG6_N_EVE), 0.0, 0.0, 1.0),
                    SweepVariable::SnrBobDb,
                    &snrs,
                )?;
            }
            b.sweep(
                &format!("equal_n{FIG6_N_EVE}"),
                &format!("N_b=N_e={FIG6_N_EVE}"),
                scenario(alpha(0.2, FIG6_N_EVE), alpha(0.2, FIG6_N_EVE), 0.0, 0.0, 1.0),
                SweepVariable::SnrBobDb,
                &snrs,
            )?;
        }
    }
    Ok(b.traces)
}

/// Eve's ray count in the reduced-rays comparison.
pub const FIG6_N_EVE: usize = 6;
/// `(from, to, steps)` of the reduced-rays comparison grid.
pub const FIG6_SNR_BOB_DB: (f64, f64, usize) = (0.0, 30.0, 16);

/// gnuplot script plotting `traces` from CSVs named `<preset>_<trace>.csv`.
pub fn gnuplot_script(preset: Preset, traces: &[Trace]) -> String {
    let mut s = String::new();
    s.push_str(&format!("# {}: run `gnuplot {}.gp` in this directory\n", preset.name(), preset.name()));
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("set terminal pngcairo size 900,650\nset output '{}.png'\n", preset.name()));
    s.push_str(&format!("set xlabel '{}'\n", preset.x_label()));
    s.push_str("set ylabel 'OPSC'\nset logscale y\nset yrange [1e-6:1.5]\nset key outside right\nset grid\n");
    let lines: Vec<String> = traces
        .iter()
        .map(|t| {
            format!(
                "'{}_{}.csv' using 1:2 skip 1 with linespoints title '{}'",
                preset.name(),
                t.name,
                t.title
            )
        })
        .collect();
    s.push_str("plot ");
    s.push_str(&lines.join(", \\\n     "));
    s.push('\n');
    s
}

/// Writes the preset's CSVs and script into `dir` (created if missing) and
/// returns the written paths.
pub fn write_figure(preset: Preset, traces: &[Trace], dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::with_capacity(traces.len() + 1);
    for t in traces {
        let path = dir.join(format!("{}_{}.csv", preset.name(), t.name));
        let mut buf = Vec::new();
        t.result.write_csv(&mut buf)?;
        fs::write(&path, buf)?;
        written.push(path);
    }
    let script = dir.join(format!("{}.gp", preset.name()));
    fs::write(&script, gnuplot_script(preset, traces))?;
    written.push(script);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> FigureOptions {
        FigureOptions {
            samples: 4_000,
            ..FigureOptions::default()
        }
    }

    #[test]
    fn fig2_traces_drop_to_zero_below_their_breakpoint() {
        let traces = traces(Preset::Fig2, &quick()).unwrap();
        assert_eq!(traces.len(), 6);
        for t in &traces {
            let rows = &t.result.rows;
            assert!(rows.windows(2).all(|w| w[0].opsc <= w[1].opsc + 1e-12), "{}", t.name);
            if t.name.starts_with("rayleigh") {
                assert!(rows.iter().all(|r| r.opsc > 0.0));
            } else {
                assert!(rows[0].exact_zero, "{}", t.name);
                assert!(rows.last().unwrap().opsc > 0.0);
            }
        }
    }

    #[test]
    fn fig4_low_threshold_matches_classical() {
        let traces = traces(Preset::Fig4, &quick()).unwrap();
        let classical = &traces[0].result.rows;
        let low = &traces[1].result.rows;
        assert_eq!(traces[1].name, "b7db_db0.4_th3db");
        for (c, l) in classical.iter().zip(low) {
            assert!((c.opsc - l.opsc).abs() < 1e-9, "rate {}", c.x);
        }
        let high = &traces[2].result.rows;
        assert!(high.iter().zip(classical).all(|(h, c)| h.opsc <= c.opsc + 1e-9));
    }

    #[test]
    fn script_lists_every_trace() {
        let traces = traces(Preset::Fig3, &quick()).unwrap();
        let s = gnuplot_script(Preset::Fig3, &traces);
        for t in &traces {
            assert!(s.contains(&format!("fig3_{}.csv", t.name)));
        }
    }
}
