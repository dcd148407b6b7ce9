use thiserror::Error;

/// Errors produced by the model operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the formula it feeds.
    #[error("{name} = {value} is outside the valid domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// A quantum number was zero or too large to be represented exactly.
    #[error("quantum number n = {0} must be in [1, 2^53 - 1]")]
    QuantumNumber(u64),

    /// The memristor radicand went negative: the flux is beyond the device range.
    #[error("memristor saturated: radicand {radicand} < 0 at flux {flux} Wb")]
    Saturation { flux: f64, radicand: f64 },

    /// A flux sweep left the device's valid range at `index`.
    #[error("flux sample {index} ({flux} Wb) saturates the memristor (radicand {radicand})")]
    FluxOutOfDomain {
        index: usize,
        flux: f64,
        radicand: f64,
    },

    /// The derivation chain failed an internal consistency check.
    #[error("derivation identity `{identity}` violated: {lhs} vs {rhs}")]
    Inconsistent {
        identity: &'static str,
        lhs: f64,
        rhs: f64,
    },

    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("cannot compare empty sequences")]
    Empty,

    #[error("segment {index} out of range (train has {len} segments)")]
    SegmentOutOfRange { index: usize, len: usize },

    #[error("invalid evaluation grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "finite and > 0",
        })
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "finite",
        })
    }
}

pub(crate) fn require_nonzero_charge(charge: f64) -> Result<f64> {
    if charge.is_finite() && charge != 0.0 {
        Ok(charge)
    } else {
        Err(Error::Domain {
            name: "charge",
            value: charge,
            expected: "finite and nonzero",
        })
    }
}
