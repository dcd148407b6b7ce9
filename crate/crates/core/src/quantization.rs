//! Resistance quantization `R = n·h/Q²` and the tyke potential.
//!
//! The resistance ladder follows from equating the quantized oscillator
//! energy `E = nhν` with the Joule energy `E = I²Rt` and substituting
//! `I = Q/T`, `ν = 1/T`. What is left over is the phase fraction `t/T`,
//! which [`normalized_resistance`] keeps and [`quantized_resistance`] drops.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{require_nonzero_charge, require_positive, Error, Result};
use crate::planck::{check_quantum_number, PhysicalConstants};

/// Relative tolerance used when checking the derivation chain.
pub const DERIVATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumResistor {
    pub n: u64,
    /// Charge Q (C). Either sign; only Q² enters.
    pub charge: f64,
    /// Resistance (Ω).
    pub resistance: f64,
}

/// Rung `n` of the resistance ladder, `n·h/Q²`.
pub fn quantized_resistance(
    n: u64,
    charge: f64,
    constants: &PhysicalConstants,
) -> Result<QuantumResistor> {
    let nf = check_quantum_number(n)?;
    require_nonzero_charge(charge)?;
    Ok(QuantumResistor {
        n,
        charge,
        resistance: nf * constants.h / (charge * charge),
    })
}

/// The lowest rung, `h/Q²`.
pub fn smallest_resistance(charge: f64, constants: &PhysicalConstants) -> Result<f64> {
    Ok(quantized_resistance(1, charge, constants)?.resistance)
}

/// `n·h/Q² · t/T`, the ladder before the phase fraction is dropped.
pub fn normalized_resistance(
    n: u64,
    charge: f64,
    elapsed: f64,
    period: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let rung = quantized_resistance(n, charge, constants)?.resistance;
    require_positive("period", period)?;
    if !(elapsed.is_finite() && elapsed >= 0.0) {
        return Err(Error::Domain {
            name: "elapsed",
            value: elapsed,
            expected: "finite and >= 0",
        });
    }
    Ok(rung * (elapsed / period))
}

/// Potential across the smallest quantized resistance at a given current.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TykePotential {
    pub current: f64,
    pub charge: f64,
    pub potential: f64,
}

pub fn tyke_potential(
    current: f64,
    charge: f64,
    constants: &PhysicalConstants,
) -> Result<TykePotential> {
    if !current.is_finite() {
        return Err(Error::Domain {
            name: "current",
            value: current,
            expected: "finite",
        });
    }
    let r = smallest_resistance(charge, constants)?;
    Ok(TykePotential {
        current,
        charge,
        potential: current * r,
    })
}

/// Phase angle as a fraction of one period, `θ/2π`, for `θ ∈ [0, 2π]`.
pub fn phase_fraction(theta: f64) -> Result<f64> {
    if !(0.0..=TAU).contains(&theta) {
        return Err(Error::Domain {
            name: "theta",
            value: theta,
            expected: "0 <= theta <= 2π",
        });
    }
    Ok(theta / TAU)
}

/// Every intermediate quantity of the energy-to-resistance derivation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivationTrace {
    /// W
    pub power: f64,
    /// J
    pub energy: f64,
    /// s
    pub time: f64,
    /// A
    pub current: f64,
    /// V
    pub voltage: f64,
    /// Ω
    pub resistance: f64,
}

impl DerivationTrace {
    /// `(name, lhs, rhs)` for each identity the trace must satisfy.
    pub fn identities(&self) -> [(&'static str, f64, f64); 4] {
        [
            ("P = E/t", self.power, self.energy / self.time),
            ("P = I·V", self.power, self.current * self.voltage),
            (
                "P = I²R",
                self.power,
                self.current * self.current * self.resistance,
            ),
            (
                "E = I²Rt",
                self.energy,
                self.current * self.current * self.resistance * self.time,
            ),
        ]
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= DERIVATION_TOLERANCE * a.abs().max(b.abs())
}

/// Walks `E = nhν → P = E/t → R = P/I² → V = IR` and checks the chain.
///
/// Returns [`Error::Inconsistent`] if any identity, or the closed form
/// `R = nhν/(I²t)`, disagrees beyond [`DERIVATION_TOLERANCE`].
pub fn verify_derivation(
    n: u64,
    frequency: f64,
    current: f64,
    duration: f64,
    constants: &PhysicalConstants,
) -> Result<DerivationTrace> {
    let nf = check_quantum_number(n)?;
    require_positive("frequency", frequency)?;
    require_positive("current", current)?;
    require_positive("duration", duration)?;

    let energy = nf * constants.h * frequency;
    let power = energy / duration;
    let resistance = power / (current * current);
    let voltage = current * resistance;
    let trace = DerivationTrace {
        power,
        energy,
        time: duration,
        current,
        voltage,
        resistance,
    };

    for (identity, lhs, rhs) in trace.identities() {
        if !close(lhs, rhs) {
            return Err(Error::Inconsistent { identity, lhs, rhs });
        }
    }
    let closed_form = nf * constants.h * frequency / (current * current * duration);
    if !close(resistance, closed_form) {
        return Err(Error::Inconsistent {
            identity: "R = nhν/(I²t)",
            lhs: resistance,
            rhs: closed_form,
        });
    }
    Ok(trace)
}
