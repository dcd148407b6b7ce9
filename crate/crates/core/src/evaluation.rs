//! Matched-point evaluation of a generated train against a reference curve.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::planck::{PhysicalConstants, WavelengthGrid};
use crate::reference::script_curve;
use crate::spiketrain::{generate_train, intensity_to_potential, TrainConfig};

/// Absolute guard added to the relative tolerance for near-zero samples.
pub const ABS_FLOOR: f64 = 1e-30;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Minimum match fraction for an evaluation to pass.
pub const DEFAULT_THRESHOLD: f64 = 0.97;
/// Upper bound on evaluation grid size.
pub const MAX_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    pub total: usize,
    pub matched: usize,
    pub fraction: f64,
    pub tolerance: f64,
    pub first_mismatch_index: Option<usize>,
}

impl MatchReport {
    pub fn passes(&self, threshold: f64) -> bool {
        self.fraction >= threshold
    }
}

fn check_tolerance(tolerance: f64) -> Result<()> {
    if tolerance.is_finite() && tolerance >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "tolerance",
            value: tolerance,
            expected: "finite and >= 0",
        })
    }
}

/// Whether two samples agree: `|a − b| ≤ tol·max(|a|, |b|, ABS_FLOOR)`.
pub fn samples_match(a: f64, b: f64, tolerance: f64) -> bool {
    (a - b).abs() <= tolerance * a.abs().max(b.abs()).max(ABS_FLOOR)
}

fn report_from_flags(flags: impl Iterator<Item = bool>, tolerance: f64) -> MatchReport {
    let mut total = 0;
    let mut matched = 0;
    let mut first_mismatch_index = None;
    for (i, ok) in flags.enumerate() {
        total += 1;
        if ok {
            matched += 1;
        } else if first_mismatch_index.is_none() {
            first_mismatch_index = Some(i);
        }
    }
    MatchReport {
        total,
        matched,
        fraction: matched as f64 / total as f64,
        tolerance,
        first_mismatch_index,
    }
}

/// Counts indices where `a` and `b` agree within `tolerance`.
pub fn count_matches(a: &[f64], b: &[f64], tolerance: f64) -> Result<MatchReport> {
    check_tolerance(tolerance)?;
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::Empty);
    }
    Ok(report_from_flags(
        a.iter().zip(b).map(|(&x, &y)| samples_match(x, y, tolerance)),
        tolerance,
    ))
}

/// Time window and tolerance of an evaluation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// First sample time (s).
    pub t0: f64,
    /// Last sample time (s), inclusive.
    pub t_max: f64,
    /// Sample spacing (s).
    pub dt: f64,
    pub tolerance: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            t0: 3.3357e-18,
            t_max: 9.9770e-15,
            dt: 3.3357e-17,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        require_positive("t0", self.t0)?;
        require_positive("dt", self.dt)?;
        check_tolerance(self.tolerance)?;
        if !(self.t_max.is_finite() && self.t_max > self.t0) {
            return Err(Error::InvalidGrid(format!(
                "t_max ({}) must exceed t0 ({})",
                self.t_max, self.t0
            )));
        }
        let points = self.span_steps() + 1.0;
        if points > MAX_POINTS as f64 {
            return Err(Error::InvalidGrid(format!(
                "{points} points exceeds the limit of {MAX_POINTS}"
            )));
        }
        Ok(())
    }

    fn span_steps(&self) -> f64 {
        ((self.t_max - self.t0) / self.dt).round()
    }

    /// Inclusive point count, `round((t_max − t0)/dt) + 1`.
    ///
    /// The window ends are quoted to five significant figures, so the span
    /// is rounded to whole steps rather than floored.
    pub fn point_count(&self) -> Result<usize> {
        self.validate()?;
        Ok(self.span_steps() as usize + 1)
    }

    /// Wavelength grid corresponding to the time window, `λ = c·t`.
    pub fn grid(&self, constants: &PhysicalConstants) -> Result<WavelengthGrid> {
        let count = self.point_count()?;
        WavelengthGrid::new(self.t0 * constants.c, self.dt * constants.c, count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentMatch {
    pub temperature: f64,
    pub report: MatchReport,
}

/// Per-temperature reports plus a summary over the time grid.
///
/// A grid point counts as matched in the summary only when every segment
/// matches at that point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub grid: WavelengthGrid,
    pub segments: Vec<SegmentMatch>,
    pub summary: MatchReport,
}

/// Evaluates the model train on the window of `config` against the curves
/// produced by `reference(grid, temperature)`. The reference values are
/// raw intensities; the train's `A/I` transform is applied to them.
pub fn evaluate_against<F>(
    config: &EvalConfig,
    train_config: &TrainConfig,
    constants: &PhysicalConstants,
    mut reference: F,
) -> Result<Evaluation>
where
    F: FnMut(&WavelengthGrid, f64) -> Vec<f64>,
{
    let grid = config.grid(constants)?;
    let model_config = TrainConfig {
        grid,
        ..train_config.clone()
    };
    let train = generate_train(&model_config, constants)?;

    let mut segments = Vec::with_capacity(train.segments().len());
    let mut all_ok = vec![true; grid.count()];
    for (k, seg) in train.segments().iter().enumerate() {
        let model = train.block(k + 1)?;
        let expected: Vec<f64> = reference(&grid, seg.temperature)
            .into_iter()
            .map(|y| intensity_to_potential(y, &train_config.transform))
            .collect();
        let report = count_matches(model, &expected, config.tolerance)?;
        for (flag, (&m, &e)) in all_ok.iter_mut().zip(model.iter().zip(&expected)) {
            *flag &= samples_match(m, e, config.tolerance);
        }
        segments.push(SegmentMatch {
            temperature: seg.temperature,
            report,
        });
    }

    Ok(Evaluation {
        grid,
        segments,
        summary: report_from_flags(all_ok.into_iter(), config.tolerance),
    })
}

/// [`evaluate_against`] with the script-transcription reference curves.
pub fn evaluate_detailed(
    config: &EvalConfig,
    train_config: &TrainConfig,
    constants: &PhysicalConstants,
) -> Result<Evaluation> {
    evaluate_against(config, train_config, constants, |grid, t| {
        script_curve(train_config.variant, grid, t, constants)
    })
}

pub fn evaluate_model(
    config: &EvalConfig,
    train_config: &TrainConfig,
    constants: &PhysicalConstants,
) -> Result<MatchReport> {
    Ok(evaluate_detailed(config, train_config, constants)?.summary)
}
