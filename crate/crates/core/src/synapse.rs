//! Memristive synapse and the pair-based STDP rule.

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_positive, Error, Result};

/// Polarity of the memristor relative to the applied bias.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BiasSign {
    Positive,
    Negative,
}

impl BiasSign {
    pub fn value(self) -> f64 {
        match self {
            BiasSign::Positive => 1.0,
            BiasSign::Negative => -1.0,
        }
    }
}

/// Snapshot of a flux-controlled memristor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MemristorState {
    r0: f64,
    eta: BiasSign,
    delta_r: f64,
    q0: f64,
    flux: f64,
}

impl MemristorState {
    /// `r0` initial resistance (Ω), `delta_r = R_max − R_min` (Ω),
    /// `q0` charge capacity (C), `flux` accumulated flux (Wb).
    pub fn new(r0: f64, eta: BiasSign, delta_r: f64, q0: f64, flux: f64) -> Result<Self> {
        require_positive("r0", r0)?;
        require_positive("q0", q0)?;
        if !(delta_r.is_finite() && delta_r >= 0.0) {
            return Err(Error::Domain {
                name: "delta_r",
                value: delta_r,
                expected: "finite and >= 0",
            });
        }
        require_finite("flux", flux)?;
        Ok(Self {
            r0,
            eta,
            delta_r,
            q0,
            flux,
        })
    }

    /// Same device at a different accumulated flux.
    pub fn with_flux(&self, flux: f64) -> Result<Self> {
        require_finite("flux", flux)?;
        Ok(Self { flux, ..*self })
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn eta(&self) -> BiasSign {
        self.eta
    }

    pub fn delta_r(&self) -> f64 {
        self.delta_r
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn flux(&self) -> f64 {
        self.flux
    }

    /// `1 − 2ηΔRφ/(Q₀R₀²)`; negative once the device is driven past its range.
    pub fn radicand(&self) -> f64 {
        1.0 - 2.0 * self.eta.value() * self.delta_r * self.flux / (self.q0 * self.r0 * self.r0)
    }
}

/// Memristance `R₀·√(1 − 2ηΔRφ/(Q₀R₀²))`.
pub fn memristance(state: &MemristorState) -> Result<f64> {
    let radicand = state.radicand();
    if radicand < 0.0 {
        return Err(Error::Saturation {
            flux: state.flux,
            radicand,
        });
    }
    Ok(state.r0 * radicand.sqrt())
}

/// Memristance at each flux value, in order.
///
/// Fails with [`Error::FluxOutOfDomain`] naming the first saturating sample.
pub fn flux_sweep(state: &MemristorState, flux_values: &[f64]) -> Result<Vec<f64>> {
    flux_values
        .iter()
        .enumerate()
        .map(|(index, &flux)| {
            let s = state.with_flux(flux)?;
            memristance(&s).map_err(|_| Error::FluxOutOfDomain {
                index,
                flux,
                radicand: s.radicand(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StdpParams {
    mu: f64,
    tau_d: f64,
}

impl StdpParams {
    /// `mu` learning rate, `tau_d` reference delay in seconds.
    pub fn new(mu: f64, tau_d: f64) -> Result<Self> {
        require_finite("mu", mu)?;
        require_positive("tau_d", tau_d)?;
        Ok(Self { mu, tau_d })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn tau_d(&self) -> f64 {
        self.tau_d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SynapseWeight(f64);

impl SynapseWeight {
    pub fn new(w: f64) -> Result<Self> {
        Ok(Self(require_finite("w", w)?))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Optional post-update clamp to `[0, 1]`. The rule itself never clamps.
    pub fn clamp_unit(self) -> Self {
        Self(self.0.clamp(0.0, 1.0))
    }
}

/// Post- and pre-synaptic spike times (s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpikePair {
    pub t_post: f64,
    pub t_pre: f64,
}

impl SpikePair {
    pub fn new(t_post: f64, t_pre: f64) -> Result<Self> {
        require_finite("t_post", t_post)?;
        require_finite("t_pre", t_pre)?;
        Ok(Self { t_post, t_pre })
    }

    pub fn reversed(self) -> Self {
        Self {
            t_post: self.t_pre,
            t_pre: self.t_post,
        }
    }
}

// f64::signum maps ±0 to ±1; the rule needs sgn(0) = 0.
fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `μ·sgn(t_post − t_pre)·exp(−|t_post − t_pre|/τ_d)`.
pub fn stdp_delta(pair: SpikePair, params: &StdpParams) -> f64 {
    let dt = pair.t_post - pair.t_pre;
    params.mu * sgn(dt) * (-dt.abs() / params.tau_d).exp()
}

pub fn apply_stdp(w: SynapseWeight, pair: SpikePair, params: &StdpParams) -> SynapseWeight {
    SynapseWeight(w.0 + stdp_delta(pair, params))
}

/// Weight after each event, starting with `w0` (length `pairs.len() + 1`).
pub fn stdp_trajectory(
    w0: SynapseWeight,
    pairs: &[SpikePair],
    params: &StdpParams,
) -> Vec<SynapseWeight> {
    let mut out = Vec::with_capacity(pairs.len() + 1);
    out.push(w0);
    let mut w = w0;
    for &pair in pairs {
        w = apply_stdp(w, pair, params);
        out.push(w);
    }
    out
}
