//! Numerical machinery: endpoint-singular quadrature, reproducible random
//! streams and statistical summaries.

pub mod quadrature;
pub mod rng;
pub mod stats;

pub use quadrature::{integrate_interval, integrate_two_wave_expectation, Quadrature, QuadratureSpec};
pub use rng::RngStream;
pub use stats::{
    binomial_std_error, clopper_pearson_zero_upper, ks_distance, probit, wilson_interval,
};
