use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use raysec::evaluate::{evaluate, EvalOptions};
use raysec::figures::{self, FigureOptions, Preset};
use raysec::scenario_file::{ScenarioFile, DEFAULT_SAMPLES};
use raysec::sweep::{grid, run_sweep, SweepVariable};
use raysec::{report, Error, Result, OUT_DIR_ENV};
use raysec_core::QuadratureSpec;

/// Secrecy outage analysis for ray-based fading channels.
#[derive(Debug, Parser)]
#[command(name = "raysec", version)]
struct Cli {
    /// Output file (eval, sweep) or directory (figures).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Monte Carlo samples; overrides the scenario file.
    #[arg(long, global = true)]
    samples: Option<u64>,
    /// Master seed; overrides the scenario file or preset.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Relative tolerance of the closed-form quadrature.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one scenario file.
    Eval { scenario: PathBuf },
    /// Sweep one parameter of a scenario file.
    Sweep {
        scenario: PathBuf,
        #[arg(long, value_enum)]
        var: SweepVariable,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Write the CSVs and gnuplot script of a figure preset.
    Figures {
        #[arg(value_enum)]
        preset: Vec<Preset>,
        /// Every preset.
        #[arg(long, conflicts_with = "preset")]
        all: bool,
    },
}

fn quadrature(cli: &Cli) -> Result<QuadratureSpec> {
    let q = QuadratureSpec::default();
    Ok(match cli.tolerance {
        Some(t) => q.with_relative_tolerance(t).map_err(|e| Error::Usage(format!("--tolerance: {e}")))?,
        None => q,
    })
}

fn options(cli: &Cli, file: &ScenarioFile) -> Result<EvalOptions> {
    Ok(EvalOptions {
        samples: cli.samples.unwrap_or(file.samples),
        seed: cli.seed.unwrap_or(file.seed),
        quadrature: quadrature(cli)?,
    })
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Eval { scenario } => {
            let file = ScenarioFile::read(scenario)?;
            let ev = evaluate(&file.to_scenario()?, &options(cli, &file)?)?;
            let mut out = sink(cli.out.as_deref())?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Text => out.write_all(report::text(&ev).as_bytes())?,
                Format::Json => report::write_json(&ev, &mut out)?,
                Format::Csv => report::write_csv(&ev, &mut out)?,
            }
            out.flush()?;
        }
        Command::Sweep {
            scenario,
            var,
            from,
            to,
            steps,
        } => {
            let file = ScenarioFile::read(scenario)?;
            let points = grid(*from, *to, *steps)?;
            let result = run_sweep(&file, *var, &points, &options(cli, &file)?)?;
            let mut out = sink(cli.out.as_deref())?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Json => result.write_json(&mut out)?,
                Format::Csv | Format::Text => result.write_csv(&mut out)?,
            }
            out.flush()?;
        }
        Command::Figures { preset, all } => {
            let presets: Vec<Preset> = if *all { Preset::ALL.to_vec() } else { preset.clone() };
            if presets.is_empty() {
                return Err(Error::Usage("name at least one preset or pass --all".into()));
            }
            let dir = match &cli.out {
                Some(d) => d.clone(),
                None => std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".")),
            };
            let opts = FigureOptions {
                samples: cli.samples.unwrap_or(DEFAULT_SAMPLES),
                seed: cli.seed,
                quadrature: quadrature(cli)?,
            };
            for p in presets {
                let traces = figures::traces(p, &opts)?;
                for path in figures::write_figure(p, &traces, &dir)? {
                    eprintln!("wrote {}", path.display());
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("raysec: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
