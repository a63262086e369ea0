//! Quadrature for integrands with integrable endpoint singularities.
//!
//! The rule is double-exponential (tanh-sinh): the interval is mapped through
//! `x = mid + half·tanh(π/2·sinh t)` and the trapezoid rule is applied in `t`
//! on `[-T, T]`. Halving the step doubles the node count and reuses every
//! previous node, so successive levels are nested. Iteration stops when two
//! consecutive levels agree to `relative_tolerance` (relative to the
//! integral of `|f|`).
//!
//! Endpoints themselves are never evaluated; nodes that round onto an
//! endpoint are dropped. Near a non-zero endpoint a node's distance to the
//! endpoint is only known to `eps·|a|`, which caps the accuracy for
//! integrands that blow up there at roughly `1e-8`; bounded integrands are
//! unaffected.
//!
//! Two-wave expectations go through [`integrate_two_wave_expectation`], which
//! first applies `γ = γ̄(1 + Δ sin u)`. Under that substitution the two-wave
//! density becomes the constant `1/π`, so the inverse-square-root singularity
//! at the support edges disappears. Kinks of the integrand (the clamps of a
//! piecewise CDF) are passed in and become split points.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Truncation of the `t` axis; weights beyond it are below 1e-20 of the
/// central weight.
const T_MAX: f64 = 3.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub relative_tolerance: f64,
    pub max_doublings: u32,
    pub initial_nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            relative_tolerance: 1e-10,
            max_doublings: 20,
            initial_nodes: 64,
        }
    }
}

impl QuadratureSpec {
    pub fn new(relative_tolerance: f64, max_doublings: u32, initial_nodes: usize) -> Result<Self> {
        let spec = QuadratureSpec {
            relative_tolerance,
            max_doublings,
            initial_nodes,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_relative_tolerance(self, relative_tolerance: f64) -> Result<Self> {
        QuadratureSpec::new(relative_tolerance, self.max_doublings, self.initial_nodes)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.relative_tolerance > f64::EPSILON) || !self.relative_tolerance.is_finite() {
            return Err(Error::invalid(
                "relative_tolerance",
                "must be finite and above machine epsilon",
            ));
        }
        if self.initial_nodes < 2 {
            return Err(Error::invalid("initial_nodes", "must be at least 2"));
        }
        Ok(())
    }
}

/// Result of a converged quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Difference between the last two levels.
    pub error_estimate: f64,
    /// Integrand evaluations spent.
    pub nodes: usize,
}

struct Level {
    sum: f64,
    abs_sum: f64,
    evals: usize,
}

/// Integrates `f` over `[a, b]` with nested tanh-sinh levels.
///
/// `f` may be singular at either endpoint as long as the singularity is
/// integrable. Returns [`Error::NoConvergence`] (carrying the best estimate)
/// when `max_doublings` is exhausted.
pub fn integrate_interval<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: FnMut(f64) -> f64,
{
    let run = tanh_sinh(f, a, b, spec)?;
    if run.converged {
        Ok(run.quadrature())
    } else {
        Err(Error::NoConvergence {
            best_estimate: run.value,
            error_estimate: run.diff,
        })
    }
}

/// Outcome of a tanh-sinh run, converged or not.
struct Run {
    value: f64,
    /// Change between the last two levels.
    diff: f64,
    /// Estimate of `∫|f|`.
    scale: f64,
    nodes: usize,
    converged: bool,
}

impl Run {
    fn quadrature(&self) -> Quadrature {
        Quadrature {
            value: self.value,
            error_estimate: self.diff,
            nodes: self.nodes,
        }
    }
}

fn tanh_sinh<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Run>
where
    F: FnMut(f64) -> f64,
{
    spec.validate()?;
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid("interval", "endpoints must be finite"));
    }
    if a == b {
        return Ok(Run {
            value: 0.0,
            diff: 0.0,
            scale: 0.0,
            nodes: 0,
            converged: true,
        });
    }
    if a > b {
        let run = tanh_sinh(f, b, a, spec)?;
        return Ok(Run {
            value: -run.value,
            ..run
        });
    }

    let half = 0.5 * (b - a);
    let mid = a + half;
    let h0 = 2.0 * T_MAX / spec.initial_nodes as f64;

    // Contribution of the symmetric node pair at `t > 0` (or the centre).
    let mut pair = |t: f64, level: &mut Level| -> Result<()> {
        if t == 0.0 {
            let v = f(mid);
            check_finite(v)?;
            level.sum += FRAC_PI_2 * v;
            level.abs_sum += FRAC_PI_2 * v.abs();
            level.evals += 1;
            return Ok(());
        }
        let s = FRAC_PI_2 * libm::sinh(t);
        let cosh_s = libm::cosh(s);
        let weight = FRAC_PI_2 * libm::cosh(t) / (cosh_s * cosh_s);
        // Distance from the nearer endpoint, computed without cancellation.
        let offset = half * libm::exp(-s) / cosh_s;
        for x in [a + offset, b - offset] {
            if x <= a || x >= b {
                continue;
            }
            let v = f(x);
            check_finite(v)?;
            level.sum += weight * v;
            level.abs_sum += weight * v.abs();
            level.evals += 1;
        }
        Ok(())
    };

    let mut acc = Level {
        sum: 0.0,
        abs_sum: 0.0,
        evals: 0,
    };
    let mut k = 0usize;
    loop {
        let t = k as f64 * h0;
        if t > T_MAX {
            break;
        }
        pair(t, &mut acc)?;
        k += 1;
    }
    let mut h = h0;
    let mut run = Run {
        value: h * half * acc.sum,
        diff: f64::INFINITY,
        scale: h * half * acc.abs_sum,
        nodes: acc.evals,
        converged: false,
    };

    for _ in 0..spec.max_doublings {
        h *= 0.5;
        // New nodes sit at odd multiples of the halved step.
        let mut k = 1usize;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            pair(t, &mut acc)?;
            k += 2;
        }
        let current = h * half * acc.sum;
        run.diff = (current - run.value).abs();
        run.value = current;
        run.scale = h * half * acc.abs_sum;
        run.nodes = acc.evals;
        if run.diff <= spec.relative_tolerance * run.scale {
            run.converged = true;
            break;
        }
    }
    Ok(run)
}

fn check_finite(v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("integrand", "returned a non-finite value"))
    }
}

/// `E[g(γ)]` for γ following the two-wave SNR law with mean `mean_snr` and
/// balance `delta`.
///
/// `kinks` lists SNR values where `g` is not smooth; those inside the open
/// support become split points in the substituted variable. Values outside
/// the support are ignored.
pub fn integrate_two_wave_expectation<G>(
    g: G,
    mean_snr: f64,
    delta: f64,
    kinks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Quadrature>
where
    G: FnMut(f64) -> f64,
{
    two_wave_expectation(g, mean_snr, delta, kinks, spec, 0.0)
}

/// [`integrate_two_wave_expectation`] that also accepts a piece once its
/// change between levels drops to `absolute_floor`.
pub(crate) fn two_wave_expectation<G>(
    mut g: G,
    mean_snr: f64,
    delta: f64,
    kinks: &[f64],
    spec: &QuadratureSpec,
    absolute_floor: f64,
) -> Result<Quadrature>
where
    G: FnMut(f64) -> f64,
{
    if !(mean_snr > 0.0) || !mean_snr.is_finite() {
        return Err(Error::invalid("mean_snr", "must be positive and finite"));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::invalid("delta", "must lie in (0, 1]"));
    }

    let mut breaks: Vec<f64> = Vec::with_capacity(kinks.len() + 2);
    breaks.push(-FRAC_PI_2);
    for &k in kinks {
        let s = (k / mean_snr - 1.0) / delta;
        if s > -1.0 && s < 1.0 {
            breaks.push(libm::asin(s));
        }
    }
    breaks.push(FRAC_PI_2);
    breaks.sort_by(|x, y| x.total_cmp(y));
    breaks.dedup();

    let mut runs = Vec::with_capacity(breaks.len() - 1);
    for w in breaks.windows(2) {
        runs.push(tanh_sinh(
            |u| g(mean_snr * (1.0 + delta * libm::sin(u))) / PI,
            w[0],
            w[1],
            spec,
        )?);
    }
    // A piece is judged against the whole expectation: one whose own integral
    // is rounding noise (next to a kink) cannot meet a relative test alone.
    let scale: f64 = runs.iter().map(|r| r.scale).sum();
    let mut total = Quadrature {
        value: 0.0,
        error_estimate: 0.0,
        nodes: 0,
    };
    let mut converged = true;
    for r in &runs {
        converged &= r.converged || r.diff <= (spec.relative_tolerance * scale).max(absolute_floor);
        total.value += r.value;
        total.error_estimate += r.diff;
        total.nodes += r.nodes;
    }
    if !converged {
        return Err(Error::NoConvergence {
            best_estimate: total.value,
            error_estimate: total.error_estimate,
        });
    }
    Ok(total)
}
