//! Quantized neuron model.
//!
//! Blackbody curves are sampled ([`planck`]), mapped onto a time/potential
//! axis and concatenated into spike trains ([`spiketrain`]), and scored by
//! counting matched points against a reference ([`evaluation`]). Alongside
//! sit the resistance ladder `R = nh/Q²` with the tyke potential
//! ([`quantization`]) and a memristive STDP synapse ([`synapse`]).

pub mod error;
pub mod evaluation;
pub mod planck;
pub mod quantization;
pub mod reference;
pub mod spiketrain;
pub mod synapse;

pub use error::{Error, Result};
pub use evaluation::{
    count_matches, evaluate_against, evaluate_detailed, evaluate_model, EvalConfig, Evaluation,
    MatchReport, SegmentMatch,
};
pub use planck::{
    oscillator_energy, planck_energy_density, planck_radiance, sample_curve, OscillatorEnergy,
    PhysicalConstants, PlanckCurve, Variant, WavelengthGrid,
};
pub use quantization::{
    phase_fraction, quantized_resistance, smallest_resistance, tyke_potential, verify_derivation,
    DerivationTrace, QuantumResistor, TykePotential,
};
pub use spiketrain::{
    generate_train, intensity_to_potential, segment_accumulation, train_times,
    wavelength_to_time, Segment, SpikeTrain, TrainConfig, TransformParams,
};
pub use synapse::{
    apply_stdp, flux_sweep, memristance, stdp_delta, BiasSign, MemristorState, SpikePair,
    StdpParams, SynapseWeight,
};
