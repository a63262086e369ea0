use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("eavesdropper SNR is unbounded; perfect secrecy cannot be certified")]
    UnboundedEavesdropper,

    #[error("no closed form for this Bob/Eve channel pair: {0}")]
    UnsupportedPair(&'static str),

    #[error("SNR threshold {threshold} is at or above Bob's maximum SNR {gamma_max}")]
    ThresholdExceedsSupport { threshold: f64, gamma_max: f64 },

    #[error("no sample satisfied the transmission condition gamma_b > gamma_th")]
    NoTransmissionEvents,

    #[error("shared-Omega normalization: {0}")]
    IncompatibleNormalization(&'static str),

    #[error("quadrature did not converge; best estimate {best_estimate} (error ~ {error_estimate})")]
    NoConvergence {
        best_estimate: f64,
        error_estimate: f64,
    },
}

impl Error {
    pub fn invalid(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }
}
