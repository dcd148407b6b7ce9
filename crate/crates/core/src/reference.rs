//! Unoptimized blackbody curves written the way the reference MATLAB
//! scripts compute them: element-wise `exp(A) - 1` with no `expm1`, no
//! overflow guard, and the scripts' operand order.
//!
//! This path shares no code with [`crate::planck`] and serves as the
//! comparison baseline for [`crate::evaluation`].

use std::f64::consts::PI;

use crate::planck::{PhysicalConstants, Variant, WavelengthGrid};

/// `quantum = (8*pi*h*c)./lambda.^5; A = (h*c)./(k*T*lambda);`
/// `curve = quantum.*(1./(exp(A)-1))`
pub fn script_energy_density(
    grid: &WavelengthGrid,
    temperature: f64,
    constants: &PhysicalConstants,
) -> Vec<f64> {
    let PhysicalConstants { h, c, k, .. } = *constants;
    grid.wavelengths()
        .map(|lambda| {
            let quantum = (8.0 * PI * h * c) / lambda.powf(5.0);
            let a = (h * c) / (k * temperature * lambda);
            quantum * (1.0 / (a.exp() - 1.0))
        })
        .collect()
}

/// `2*pi*h*c^2 ./ (lambda.^5 .* (exp(h*c./(lambda*k*T)) - 1))`
pub fn script_radiance(
    grid: &WavelengthGrid,
    temperature: f64,
    constants: &PhysicalConstants,
) -> Vec<f64> {
    let PhysicalConstants { h, c, k, .. } = *constants;
    grid.wavelengths()
        .map(|lambda| {
            let denom = lambda.powf(5.0) * ((h * c / (lambda * k * temperature)).exp() - 1.0);
            2.0 * PI * h * c.powf(2.0) / denom
        })
        .collect()
}

pub fn script_curve(
    variant: Variant,
    grid: &WavelengthGrid,
    temperature: f64,
    constants: &PhysicalConstants,
) -> Vec<f64> {
    match variant {
        Variant::Radiance => script_radiance(grid, temperature, constants),
        Variant::EnergyDensity => script_energy_density(grid, temperature, constants),
    }
}
