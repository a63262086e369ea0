//! Multi-threaded Monte Carlo over a [`ShardPlan`].
//!
//! Shards are independent streams and tallies are integers, so the result is
//! bit-identical to the sequential run in `raysec-core` for any thread count.

use rayon::prelude::*;

use raysec_core::numerics::RngStream;
use raysec_core::secrecy::{estimate_from_counts, shard_counts, OutageCounts, ShardPlan, MIN_MONTE_CARLO_SAMPLES};
use raysec_core::{Error, OpscEstimate, Result, SecrecyScenario};

pub fn monte_carlo_counts(s: &SecrecyScenario, plan: &ShardPlan, base: &RngStream) -> Result<OutageCounts> {
    (0..plan.shards())
        .into_par_iter()
        .map(|i| shard_counts(s, plan, i, base))
        .try_reduce(OutageCounts::default, |a, b| Ok(a.merge(b)))
}

/// Parallel counterpart of `raysec_core::secrecy::opsc_monte_carlo`.
pub fn opsc_monte_carlo(s: &SecrecyScenario, samples: u64, base: &RngStream) -> Result<OpscEstimate> {
    if samples < MIN_MONTE_CARLO_SAMPLES {
        return Err(Error::invalid("samples", "need at least 1000 Monte Carlo samples"));
    }
    estimate_from_counts(monte_carlo_counts(s, &ShardPlan::for_samples(samples), base)?)
}
