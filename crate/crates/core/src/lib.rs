//! Secrecy outage analysis for wiretap channels whose fading comes from a
//! finite number of multipath rays.
//!
//! With finitely many constant-amplitude rays the instantaneous SNR lives on a
//! bounded interval, so Bob's and Eve's SNR laws can have disjoint supports
//! once Eve's SNR is mapped through the secrecy condition. When that happens
//! the outage probability of secrecy capacity (OPSC) is exactly zero.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised as:
//!
//! - [`fading`]: ray channels, two-wave closed forms, Rayleigh/Rician
//!   baselines and exact samplers.
//! - [`secrecy`]: scenarios, secrecy capacity, perfect-secrecy certificates,
//!   OPSC by quadrature and Monte Carlo, throughput and power-loss analysis.
//! - [`numerics`]: endpoint-singular quadrature, reproducible random streams
//!   and binomial/KS statistics.
//!
//! All SNRs are linear unless a name says `_db`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod fading;
pub mod numerics;
pub mod secrecy;
pub mod units;

pub use error::{Error, Result};
pub use fading::{AlphaFamily, FadingSpec, RayChannel, SnrBounds, SnrSampler};
pub use numerics::quadrature::{Quadrature, QuadratureSpec};
pub use numerics::rng::RngStream;
pub use secrecy::{Normalization, OpscEstimate, OpscMethod, SecrecyScenario};
