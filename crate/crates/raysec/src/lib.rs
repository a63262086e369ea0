//! Command-line companion to `raysec-core`: scenario files, multi-threaded
//! Monte Carlo, parameter sweeps and figure data.

pub mod error;
pub mod evaluate;
pub mod figures;
pub mod parallel;
pub mod report;
pub mod scenario_file;
pub mod sweep;

pub use error::{Error, Result};
pub use evaluate::{evaluate, EvalOptions, Evaluation};
pub use scenario_file::ScenarioFile;
pub use sweep::{SweepResult, SweepVariable};

/// Environment variable naming the default output directory of `figures`.
pub const OUT_DIR_ENV: &str = "RAYSEC_OUT_DIR";
