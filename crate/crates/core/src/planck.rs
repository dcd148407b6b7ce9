//! Blackbody spectral curves and quantized oscillator energies.
//!
//! Two prefactor forms of Planck's law are provided. [`Variant::Radiance`]
//! is the emitted power per unit area per unit wavelength,
//! `2πhc² / (λ⁵ (e^{hc/λkT} − 1))`. [`Variant::EnergyDensity`] is the
//! spectral energy density `8πhc / (λ⁵ (e^{hc/λkT} − 1))` that the reference
//! MATLAB scripts plot. The two differ by the constant factor `4/c`, so they
//! share every argmax.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Largest exponent `hc/λkT` evaluated; beyond it the Bose factor is taken as 0.
pub const MAX_EXPONENT: f64 = 700.0;

/// Largest quantum number accepted (keeps `n` exact as an `f64`).
pub const MAX_QUANTUM_NUMBER: u64 = (1 << 53) - 1;

/// Physical constants in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Planck constant (J·s).
    pub h: f64,
    /// Speed of light (m/s).
    pub c: f64,
    /// Boltzmann constant (J/K).
    pub k: f64,
    /// Elementary charge (C).
    pub e_charge: f64,
}

impl PhysicalConstants {
    /// Values used by the reference MATLAB scripts. This is the default.
    pub const LISTING: Self = Self {
        h: 6.6261e-34,
        c: 2.9979e8,
        k: 1.3807e-23,
        e_charge: 1.60218e-19,
    };

    /// Three-significant-figure textbook values.
    pub const PROSE: Self = Self {
        h: 6.626e-34,
        c: 3e8,
        k: 1.38e-23,
        e_charge: 1.60218e-19,
    };

    pub fn new(h: f64, c: f64, k: f64, e_charge: f64) -> Result<Self> {
        let constants = Self { h, c, k, e_charge };
        constants.validate()?;
        Ok(constants)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("h", self.h)?;
        require_positive("c", self.c)?;
        require_positive("k", self.k)?;
        require_positive("e_charge", self.e_charge)?;
        Ok(())
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::LISTING
    }
}

/// Uniform wavelength grid; sample `i` sits at `start + i·step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavelengthGrid {
    start: f64,
    step: f64,
    count: usize,
}

impl WavelengthGrid {
    /// The 1 nm / 10 nm / 300-sample grid of the reference scripts.
    pub const REFERENCE: Self = Self {
        start: 1e-9,
        step: 10e-9,
        count: 300,
    };

    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        require_positive("lambda_start", start)?;
        require_positive("lambda_step", step)?;
        if count == 0 {
            return Err(Error::Domain {
                name: "count",
                value: 0.0,
                expected: ">= 1",
            });
        }
        Ok(Self { start, step, count })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Wavelength of sample `i`. Does not check `i < count`.
    pub fn wavelength(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn wavelengths(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.wavelength(i))
    }
}

impl Default for WavelengthGrid {
    fn default() -> Self {
        Self::REFERENCE
    }
}

/// Which prefactor of Planck's law to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `2πhc²/λ⁵` prefactor, W·m⁻²·m⁻¹.
    Radiance,
    /// `8πhc/λ⁵` prefactor, J·m⁻³·m⁻¹.
    #[default]
    EnergyDensity,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Radiance => "radiance",
            Variant::EnergyDensity => "energy_density",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "radiance" => Ok(Variant::Radiance),
            "energy_density" | "energy-density" => Ok(Variant::EnergyDensity),
            other => Err(format!(
                "unknown variant `{other}` (expected `radiance` or `energy_density`)"
            )),
        }
    }
}

/// `1/(e^x − 1)`, with `x > MAX_EXPONENT` mapped to 0.
fn bose_factor(x: f64) -> f64 {
    if x > MAX_EXPONENT {
        0.0
    } else {
        1.0 / x.exp_m1()
    }
}

fn check_domain(lambda: f64, temperature: f64) -> Result<()> {
    require_positive("lambda", lambda)?;
    require_positive("temperature", temperature)?;
    Ok(())
}

fn spectral(prefactor: f64, lambda: f64, temperature: f64, constants: &PhysicalConstants) -> f64 {
    let x = (constants.h * constants.c) / (constants.k * temperature * lambda);
    prefactor / lambda.powi(5) * bose_factor(x)
}

/// Spectral power per unit area per unit wavelength (W·m⁻²·m⁻¹).
pub fn planck_radiance(lambda: f64, temperature: f64, constants: &PhysicalConstants) -> Result<f64> {
    check_domain(lambda, temperature)?;
    let prefactor = 2.0 * PI * constants.h * constants.c * constants.c;
    Ok(spectral(prefactor, lambda, temperature, constants))
}

/// Spectral energy density (J·m⁻³·m⁻¹), the `8πhc/λ⁵` form.
pub fn planck_energy_density(
    lambda: f64,
    temperature: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    check_domain(lambda, temperature)?;
    let prefactor = 8.0 * PI * constants.h * constants.c;
    Ok(spectral(prefactor, lambda, temperature, constants))
}

pub fn planck(
    variant: Variant,
    lambda: f64,
    temperature: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    match variant {
        Variant::Radiance => planck_radiance(lambda, temperature, constants),
        Variant::EnergyDensity => planck_energy_density(lambda, temperature, constants),
    }
}

/// A Planck curve sampled on a wavelength grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanckCurve {
    pub grid: WavelengthGrid,
    pub temperature: f64,
    pub variant: Variant,
    pub values: Vec<f64>,
}

impl PlanckCurve {
    /// Index of the largest sample (first one on ties).
    pub fn argmax(&self) -> usize {
        self.values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &v)| {
                if v > best.1 {
                    (i, v)
                } else {
                    best
                }
            })
            .0
    }

    pub fn peak_wavelength(&self) -> f64 {
        self.grid.wavelength(self.argmax())
    }

    pub fn wavelengths(&self) -> Vec<f64> {
        self.grid.wavelengths().collect()
    }
}

pub fn sample_curve(
    grid: &WavelengthGrid,
    temperature: f64,
    variant: Variant,
    constants: &PhysicalConstants,
) -> Result<PlanckCurve> {
    let values = grid
        .wavelengths()
        .map(|lambda| planck(variant, lambda, temperature, constants))
        .collect::<Result<Vec<_>>>()?;
    Ok(PlanckCurve {
        grid: *grid,
        temperature,
        variant,
        values,
    })
}

/// Energy `n·h·ν` of a quantized oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorEnergy {
    pub n: u64,
    pub frequency: f64,
    pub energy: f64,
}

pub(crate) fn check_quantum_number(n: u64) -> Result<f64> {
    if n == 0 || n > MAX_QUANTUM_NUMBER {
        return Err(Error::QuantumNumber(n));
    }
    Ok(n as f64)
}

pub fn oscillator_energy(
    n: u64,
    frequency: f64,
    constants: &PhysicalConstants,
) -> Result<OscillatorEnergy> {
    let nf = check_quantum_number(n)?;
    require_positive("frequency", frequency)?;
    Ok(OscillatorEnergy {
        n,
        frequency,
        energy: nf * constants.h * frequency,
    })
}
