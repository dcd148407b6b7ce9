//! Planck-curve to spike-train transformation.
//!
//! Wavelength maps to time by `t = λ/c` and intensity maps to potential by
//! `v = y·A/I`. A train is a block of `grid.count` zero samples followed by
//! one transformed curve per temperature.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::planck::{sample_curve, PhysicalConstants, Variant, WavelengthGrid};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformParams {
    area: f64,
    current: f64,
}

impl TransformParams {
    /// `area` in m², `current` in A.
    pub fn new(area: f64, current: f64) -> Result<Self> {
        require_positive("area", area)?;
        require_positive("current", current)?;
        Ok(Self { area, current })
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn current(&self) -> f64 {
        self.current
    }
}

impl Default for TransformParams {
    fn default() -> Self {
        Self {
            area: 1.0,
            current: 1.0,
        }
    }
}

/// `λ/c`.
pub fn wavelength_to_time(lambda: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::Domain {
            name: "lambda",
            value: lambda,
            expected: "finite and >= 0",
        });
    }
    Ok(lambda / constants.c)
}

/// `y·A/I`.
pub fn intensity_to_potential(y: f64, params: &TransformParams) -> f64 {
    y * params.area / params.current
}

/// Temperatures 4500, 5000, …, 7500 K.
pub fn default_temperatures() -> Vec<f64> {
    (0..7).map(|i| 4500.0 + 500.0 * i as f64).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub grid: WavelengthGrid,
    pub temperatures: Vec<f64>,
    pub transform: TransformParams,
    pub variant: Variant,
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.temperatures.is_empty() {
            return Err(Error::Domain {
                name: "temperatures",
                value: 0.0,
                expected: "at least one temperature",
            });
        }
        for &t in &self.temperatures {
            require_positive("temperature", t)?;
        }
        // re-check in case the fields were built by hand or deserialized
        WavelengthGrid::new(self.grid.start(), self.grid.step(), self.grid.count())?;
        TransformParams::new(self.transform.area, self.transform.current)?;
        Ok(())
    }

    /// Number of samples `generate_train` will produce.
    pub fn train_len(&self) -> usize {
        (1 + self.temperatures.len()) * self.grid.count()
    }
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            grid: WavelengthGrid::REFERENCE,
            temperatures: default_temperatures(),
            transform: TransformParams::default(),
            variant: Variant::EnergyDensity,
        }
    }
}

/// One temperature block of a train.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub start_index: usize,
    pub length: usize,
    pub temperature: f64,
}

/// Identifies a block of a train: `0` is the zero prefix, `k ≥ 1` the k-th
/// temperature segment. Matches the `segment_id` column of CSV output.
pub type SegmentId = usize;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpikeTrain {
    sample_period: f64,
    potentials: Vec<f64>,
    segments: Vec<Segment>,
    prefix_length: usize,
}

impl SpikeTrain {
    /// Builds a train from raw parts, checking the layout invariants:
    /// a zero prefix followed by contiguous segments covering the rest.
    pub fn new(
        sample_period: f64,
        potentials: Vec<f64>,
        segments: Vec<Segment>,
        prefix_length: usize,
    ) -> Result<Self> {
        require_positive("sample_period", sample_period)?;
        let invalid = |what: &str| Error::InvalidGrid(format!("spike train layout: {what}"));
        if prefix_length > potentials.len() {
            return Err(invalid("prefix longer than train"));
        }
        if potentials[..prefix_length].iter().any(|&v| v != 0.0) {
            return Err(invalid("prefix samples must be exactly 0"));
        }
        let mut next = prefix_length;
        for s in &segments {
            if s.start_index != next {
                return Err(invalid("segments must be contiguous"));
            }
            next += s.length;
        }
        if next != potentials.len() {
            return Err(invalid("segment lengths do not cover the train"));
        }
        Ok(Self {
            sample_period,
            potentials,
            segments,
            prefix_length,
        })
    }

    pub fn sample_period(&self) -> f64 {
        self.sample_period
    }

    pub fn potentials(&self) -> &[f64] {
        &self.potentials
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn prefix_length(&self) -> usize {
        self.prefix_length
    }

    pub fn len(&self) -> usize {
        self.potentials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.potentials.is_empty()
    }

    /// Number of addressable blocks, prefix included.
    pub fn block_count(&self) -> usize {
        1 + self.segments.len()
    }

    /// Samples of block `id` (see [`SegmentId`]).
    pub fn block(&self, id: SegmentId) -> Result<&[f64]> {
        let range = match id {
            0 => 0..self.prefix_length,
            k if k <= self.segments.len() => {
                let s = &self.segments[k - 1];
                s.start_index..s.start_index + s.length
            }
            _ => {
                return Err(Error::SegmentOutOfRange {
                    index: id,
                    len: self.block_count(),
                })
            }
        };
        Ok(&self.potentials[range])
    }

    /// Block id of every sample, in order.
    pub fn segment_ids(&self) -> Vec<SegmentId> {
        let mut ids = vec![0; self.prefix_length];
        for (k, s) in self.segments.iter().enumerate() {
            ids.extend(std::iter::repeat_n(k + 1, s.length));
        }
        ids
    }
}

pub fn generate_train(config: &TrainConfig, constants: &PhysicalConstants) -> Result<SpikeTrain> {
    config.validate()?;
    let count = config.grid.count();
    let mut potentials = vec![0.0; count];
    potentials.reserve(count * config.temperatures.len());
    let mut segments = Vec::with_capacity(config.temperatures.len());

    for &temperature in &config.temperatures {
        let curve = sample_curve(&config.grid, temperature, config.variant, constants)?;
        segments.push(Segment {
            start_index: potentials.len(),
            length: count,
            temperature,
        });
        potentials.extend(
            curve
                .values
                .iter()
                .map(|&y| intensity_to_potential(y, &config.transform)),
        );
    }

    Ok(SpikeTrain {
        sample_period: wavelength_to_time(config.grid.step(), constants)?,
        potentials,
        segments,
        prefix_length: count,
    })
}

/// Time of every sample, `t0 + i·sample_period`.
pub fn train_times(train: &SpikeTrain, t0: f64) -> Result<Vec<f64>> {
    if !(t0.is_finite() && t0 >= 0.0) {
        return Err(Error::Domain {
            name: "t0",
            value: t0,
            expected: "finite and >= 0",
        });
    }
    Ok((0..train.len())
        .map(|i| t0 + i as f64 * train.sample_period)
        .collect())
}

/// Discrete sum of the potentials in block `id`.
///
/// This reads "accumulation of tyke potentials over time" as a plain sum
/// over samples; it is not an integral over time.
pub fn segment_accumulation(train: &SpikeTrain, id: SegmentId) -> Result<f64> {
    Ok(train.block(id)?.iter().sum())
}
