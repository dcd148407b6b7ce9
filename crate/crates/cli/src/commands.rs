//! Subcommand implementations.

use std::path::{Path, PathBuf};

use serde::Serialize;
use spike_tyke::evaluation::{evaluate_against, EvalConfig, Evaluation, DEFAULT_THRESHOLD};
use spike_tyke::planck::{sample_curve, PhysicalConstants, PlanckCurve, Variant, WavelengthGrid};
use spike_tyke::quantization::{quantized_resistance, tyke_potential};
use spike_tyke::reference::script_curve;
use spike_tyke::spiketrain::{
    default_temperatures, generate_train, train_times, wavelength_to_time, Segment, TrainConfig,
    TransformParams,
};
use spike_tyke::synapse::{stdp_delta, stdp_trajectory, SpikePair, StdpParams, SynapseWeight};

use crate::config::{require, resolve, FileConfig, Format};
use crate::error::{CliError, CliResult, EXIT_BELOW_THRESHOLD, EXIT_OK};
use crate::output::{csv_bytes, fmt_f64, is_stdout, json_bytes, suffixed, write_output, Cell};
use crate::svg::{Plot, Series, Style};
use crate::{CommonArgs, CurveArgs, GridArgs, TransformArgs};
use crate::{EvaluateArgs, PlanckArgs, QuantizeArgs, SpikeTrainArgs, StdpArgs};

/// Temperatures plotted by the reference Planck-curve script.
pub const PLANCK_DEFAULT_TEMPERATURES: [f64; 3] = [4500.0, 6000.0, 7500.0];
pub const QUANTIZE_DEFAULT_RANGE: (u64, u64) = (1, 5);
/// Largest number of rows `quantize` will emit.
pub const QUANTIZE_MAX_ROWS: u64 = 1_000_000;

struct Common {
    file: FileConfig,
    constants: PhysicalConstants,
    output: PathBuf,
    format: Format,
}

fn load_common(args: &CommonArgs, default_format: Format) -> CliResult<Common> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let constants = file.resolve_constants(args.constants)?;
    let output = require(args.output.clone(), file.output.clone(), "output")?;
    let format = resolve(args.format, file.format, default_format);
    Ok(Common {
        file,
        constants,
        output,
        format,
    })
}

fn parse_variant(flag: Option<Variant>, file: &Option<String>) -> CliResult<Variant> {
    let from_file = file
        .as_deref()
        .map(str::parse::<Variant>)
        .transpose()
        .map_err(CliError::Validation)?;
    Ok(resolve(flag, from_file, Variant::EnergyDensity))
}

fn resolve_grid(args: &GridArgs, file: &FileConfig) -> CliResult<WavelengthGrid> {
    let d = WavelengthGrid::REFERENCE;
    Ok(WavelengthGrid::new(
        resolve(args.lambda_start, file.lambda_start, d.start()),
        resolve(args.lambda_step, file.lambda_step, d.step()),
        resolve(args.count, file.count, d.count()),
    )?)
}

fn resolve_temperatures(args: &CurveArgs, file: &FileConfig, default: Vec<f64>) -> CliResult<Vec<f64>> {
    let temps = resolve(args.temperatures.clone(), file.temperatures.clone(), default);
    if temps.is_empty() {
        return Err(CliError::Validation("at least one temperature is required".into()));
    }
    Ok(temps)
}

fn resolve_transform(args: &TransformArgs, file: &FileConfig) -> CliResult<TransformParams> {
    let d = TransformParams::default();
    Ok(TransformParams::new(
        resolve(args.area, file.area, d.area()),
        resolve(args.current, file.current, d.current()),
    )?)
}

fn output_label(path: &Path) -> String {
    path.display().to_string()
}

fn temperature_tag(t: f64) -> String {
    format!("{t}K")
}

#[derive(Serialize)]
struct CurveSettings {
    constants: PhysicalConstants,
    count: usize,
    format: Format,
    lambda_start: f64,
    lambda_step: f64,
    output: String,
    temperatures: Vec<f64>,
    variant: Variant,
}

#[derive(Serialize)]
struct CurveRecord<'a> {
    temperature_k: f64,
    variant: Variant,
    wavelength_m: Vec<f64>,
    intensity: &'a [f64],
}

#[derive(Serialize)]
struct PlanckDocument<'a> {
    config: &'a CurveSettings,
    curves: Vec<CurveRecord<'a>>,
}

pub fn planck(args: &PlanckArgs) -> CliResult<i32> {
    let common = load_common(&args.common, Format::Csv)?;
    let file = &common.file;
    let grid = resolve_grid(&args.grid, file)?;
    let temperatures =
        resolve_temperatures(&args.curve, file, PLANCK_DEFAULT_TEMPERATURES.to_vec())?;
    let variant = parse_variant(args.curve.variant, &file.variant)?;

    let curves = temperatures
        .iter()
        .map(|&t| sample_curve(&grid, t, variant, &common.constants))
        .collect::<Result<Vec<PlanckCurve>, _>>()?;

    let settings = CurveSettings {
        constants: common.constants,
        count: grid.count(),
        format: common.format,
        lambda_start: grid.start(),
        lambda_step: grid.step(),
        output: output_label(&common.output),
        temperatures: temperatures.clone(),
        variant,
    };

    match common.format {
        Format::Csv => {
            if curves.len() > 1 && is_stdout(&common.output) {
                return Err(CliError::Validation(
                    "several temperatures write one CSV file each; --output cannot be `-`".into(),
                ));
            }
            for curve in &curves {
                let rows: Vec<Vec<Cell>> = curve
                    .grid
                    .wavelengths()
                    .zip(&curve.values)
                    .map(|(l, &v)| vec![Cell::Float(l), Cell::Float(v)])
                    .collect();
                let path = if curves.len() == 1 {
                    common.output.clone()
                } else {
                    suffixed(&common.output, &temperature_tag(curve.temperature))
                };
                write_output(&path, &csv_bytes(&["wavelength_m", "intensity"], &rows)?)?;
            }
        }
        Format::Json => {
            let doc = PlanckDocument {
                config: &settings,
                curves: curves
                    .iter()
                    .map(|c| CurveRecord {
                        temperature_k: c.temperature,
                        variant: c.variant,
                        wavelength_m: c.wavelengths(),
                        intensity: &c.values,
                    })
                    .collect(),
            };
            write_output(&common.output, &json_bytes(&doc)?)?;
        }
        Format::Svg => {
            let styles = [Style::Line, Style::Dashed, Style::Markers];
            let plot = Plot {
                title: "Relation Between Wavelength and Intensity".into(),
                x_label: "Wavelength (m)".into(),
                y_label: format!("Intensity ({variant})"),
                series: curves
                    .iter()
                    .enumerate()
                    .map(|(i, c)| Series {
                        label: format!("T_{} = {}", i + 1, c.temperature),
                        points: c.grid.wavelengths().zip(c.values.iter().copied()).collect(),
                        style: styles[i % styles.len()],
                    })
                    .collect(),
            };
            write_output(&common.output, plot.render().as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TrainSettings {
    area: f64,
    constants: PhysicalConstants,
    count: usize,
    current: f64,
    format: Format,
    lambda_start: f64,
    lambda_step: f64,
    output: String,
    t0: f64,
    temperatures: Vec<f64>,
    variant: Variant,
}

#[derive(Serialize)]
struct TrainDocument<'a> {
    config: &'a TrainSettings,
    potential_v: &'a [f64],
    prefix_length: usize,
    sample_period_s: f64,
    segment_id: Vec<usize>,
    segments: &'a [Segment],
    time_s: Vec<f64>,
}

pub fn spike_train(args: &SpikeTrainArgs) -> CliResult<i32> {
    let common = load_common(&args.common, Format::Csv)?;
    let file = &common.file;
    let config = TrainConfig {
        grid: resolve_grid(&args.grid, file)?,
        temperatures: resolve_temperatures(&args.curve, file, default_temperatures())?,
        transform: resolve_transform(&args.transform, file)?,
        variant: parse_variant(args.curve.variant, &file.variant)?,
    };
    let train = generate_train(&config, &common.constants)?;
    // first sample sits at the first grid wavelength
    let t0 = wavelength_to_time(config.grid.start(), &common.constants)?;
    let times = train_times(&train, t0)?;
    let ids = train.segment_ids();

    let settings = TrainSettings {
        area: config.transform.area(),
        constants: common.constants,
        count: config.grid.count(),
        current: config.transform.current(),
        format: common.format,
        lambda_start: config.grid.start(),
        lambda_step: config.grid.step(),
        output: output_label(&common.output),
        t0,
        temperatures: config.temperatures.clone(),
        variant: config.variant,
    };

    let bytes = match common.format {
        Format::Csv => {
            let rows: Vec<Vec<Cell>> = times
                .iter()
                .zip(train.potentials())
                .zip(&ids)
                .map(|((&t, &v), &id)| vec![Cell::Float(t), Cell::Float(v), Cell::Int(id as u64)])
                .collect();
            csv_bytes(&["time_s", "potential_v", "segment_id"], &rows)?
        }
        Format::Json => json_bytes(&TrainDocument {
            config: &settings,
            potential_v: train.potentials(),
            prefix_length: train.prefix_length(),
            sample_period_s: train.sample_period(),
            segment_id: ids,
            segments: train.segments(),
            time_s: times,
        })?,
        Format::Svg => Plot {
            title: "Generated Spike Train".into(),
            x_label: "Time (s)".into(),
            y_label: "Potential (V)".into(),
            series: vec![Series {
                label: "spike".into(),
                points: times.into_iter().zip(train.potentials().iter().copied()).collect(),
                style: Style::Line,
            }],
        }
        .render()
        .into_bytes(),
    };
    write_output(&common.output, &bytes)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct QuantizeSettings {
    charge: f64,
    constants: PhysicalConstants,
    current: f64,
    format: Format,
    n_max: u64,
    n_min: u64,
    output: String,
}

#[derive(Serialize)]
struct QuantizeRow {
    n: u64,
    resistance_ohm: f64,
    tyke_potential_v: f64,
}

#[derive(Serialize)]
struct QuantizeDocument<'a> {
    config: &'a QuantizeSettings,
    rows: &'a [QuantizeRow],
    tyke_v: f64,
}

pub fn quantize(args: &QuantizeArgs) -> CliResult<i32> {
    let common = load_common(&args.common, Format::Csv)?;
    let file = &common.file;
    let n_min = resolve(args.n_min, file.n_min, QUANTIZE_DEFAULT_RANGE.0);
    let n_max = resolve(args.n_max, file.n_max, QUANTIZE_DEFAULT_RANGE.1.max(n_min));
    let charge = require(args.charge, file.charge, "charge")?;
    let current = require(args.current, file.current, "current")?;
    if n_min == 0 || n_max < n_min {
        return Err(CliError::Validation(format!(
            "invalid range n = {n_min}..={n_max} (need 1 <= n_min <= n_max)"
        )));
    }
    if n_max - n_min >= QUANTIZE_MAX_ROWS {
        return Err(CliError::Validation(format!(
            "range n = {n_min}..={n_max} exceeds {QUANTIZE_MAX_ROWS} rows"
        )));
    }

    let tyke = tyke_potential(current, charge, &common.constants)?;
    let rows = (n_min..=n_max)
        .map(|n| {
            let r = quantized_resistance(n, charge, &common.constants)?.resistance;
            Ok(QuantizeRow {
                n,
                resistance_ohm: r,
                tyke_potential_v: current * r,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let settings = QuantizeSettings {
        charge,
        constants: common.constants,
        current,
        format: common.format,
        n_max,
        n_min,
        output: output_label(&common.output),
    };
    let bytes = match common.format {
        Format::Csv => csv_bytes(
            &["n", "resistance_ohm", "tyke_potential_v"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Int(r.n),
                        Cell::Float(r.resistance_ohm),
                        Cell::Float(r.tyke_potential_v),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Json => json_bytes(&QuantizeDocument {
            config: &settings,
            rows: &rows,
            tyke_v: tyke.potential,
        })?,
        Format::Svg => Plot {
            title: "Quantized Resistance".into(),
            x_label: "n".into(),
            y_label: "Resistance (ohm)".into(),
            series: vec![Series {
                label: format!("Q = {} C", fmt_f64(charge)),
                points: rows.iter().map(|r| (r.n as f64, r.resistance_ohm)).collect(),
                style: Style::Markers,
            }],
        }
        .render()
        .into_bytes(),
    };
    write_output(&common.output, &bytes)?;
    Ok(EXIT_OK)
}

/// Reads `t_post_s,t_pre_s` rows. A header row and blank lines are allowed.
pub fn read_pairs(path: &Path) -> CliResult<Vec<SpikePair>> {
    let text = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    parse_pairs(&text).map_err(|msg| CliError::Validation(format!("{}: {msg}", path.display())))
}

pub fn parse_pairs(bytes: &[u8]) -> Result<Vec<SpikePair>, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut pairs = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| format!("malformed CSV: {e}"))?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if i == 0 && record.get(0) == Some("t_post_s") {
            if record.get(1) != Some("t_pre_s") || record.len() != 2 {
                return Err(format!("line {line}: expected header `t_post_s,t_pre_s`"));
            }
            continue;
        }
        if record.len() != 2 {
            return Err(format!("line {line}: expected 2 fields, found {}", record.len()));
        }
        let field = |k: usize, name: &str| {
            record[k]
                .parse::<f64>()
                .map_err(|_| format!("line {line}: cannot parse {name} `{}`", &record[k]))
        };
        let pair = SpikePair::new(field(0, "t_post_s")?, field(1, "t_pre_s")?)
            .map_err(|e| format!("line {line}: {e}"))?;
        pairs.push(pair);
    }
    Ok(pairs)
}

#[derive(Serialize)]
struct StdpSettings {
    format: Format,
    mu: f64,
    output: String,
    pairs: String,
    tau_d: f64,
    w0: f64,
}

#[derive(Serialize)]
struct StdpEvent {
    delta_w: f64,
    event: usize,
    t_post_s: f64,
    t_pre_s: f64,
    w: f64,
}

#[derive(Serialize)]
struct StdpDocument<'a> {
    config: &'a StdpSettings,
    events: &'a [StdpEvent],
    trajectory: Vec<f64>,
}

pub fn stdp(args: &StdpArgs) -> CliResult<i32> {
    let common = load_common(&args.common, Format::Csv)?;
    let file = &common.file;
    let pairs_path = require(args.pairs.clone(), file.pairs.clone(), "pairs")?;
    let mu = require(args.mu, file.mu, "mu")?;
    let tau_d = require(args.tau_d, file.tau_d, "tau_d")?;
    let w0 = require(args.w0, file.w0, "w0")?;
    let params = StdpParams::new(mu, tau_d)?;
    let w0 = SynapseWeight::new(w0)?;
    let pairs = read_pairs(&pairs_path)?;

    let trajectory = stdp_trajectory(w0, &pairs, &params);
    let events: Vec<StdpEvent> = pairs
        .iter()
        .zip(&trajectory[1..])
        .enumerate()
        .map(|(i, (&p, &w))| StdpEvent {
            delta_w: stdp_delta(p, &params),
            event: i + 1,
            t_post_s: p.t_post,
            t_pre_s: p.t_pre,
            w: w.value(),
        })
        .collect();

    let settings = StdpSettings {
        format: common.format,
        mu,
        output: output_label(&common.output),
        pairs: pairs_path.display().to_string(),
        tau_d,
        w0: w0.value(),
    };
    let bytes = match common.format {
        Format::Csv => {
            let mut rows = vec![vec![Cell::Int(0), Cell::Float(0.0), Cell::Float(w0.value())]];
            rows.extend(events.iter().map(|e| {
                vec![Cell::Int(e.event as u64), Cell::Float(e.delta_w), Cell::Float(e.w)]
            }));
            csv_bytes(&["event", "delta_w", "w"], &rows)?
        }
        Format::Json => json_bytes(&StdpDocument {
            config: &settings,
            events: &events,
            trajectory: trajectory.iter().map(|w| w.value()).collect(),
        })?,
        Format::Svg => Plot {
            title: "Synaptic Weight Trajectory".into(),
            x_label: "Event".into(),
            y_label: "w".into(),
            series: vec![Series {
                label: format!("mu = {}, tau_d = {} s", fmt_f64(mu), fmt_f64(tau_d)),
                points: trajectory
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (i as f64, w.value()))
                    .collect(),
                style: Style::Line,
            }],
        }
        .render()
        .into_bytes(),
    };
    write_output(&common.output, &bytes)?;
    Ok(EXIT_OK)
}

/// What the evaluated train is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceKind {
    /// Transcribed reference-script arithmetic.
    Script,
    /// The model's own curves.
    Model,
}

impl std::str::FromStr for ReferenceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "script" => Ok(Self::Script),
            "model" => Ok(Self::Model),
            other => Err(format!(
                "unknown reference `{other}` (expected `script` or `model`)"
            )),
        }
    }
}

#[derive(Serialize)]
struct EvalSettings {
    area: f64,
    constants: PhysicalConstants,
    current: f64,
    dt: f64,
    format: Format,
    output: String,
    reference: ReferenceKind,
    t0: f64,
    t_max: f64,
    temperatures: Vec<f64>,
    threshold: f64,
    tolerance: f64,
    variant: Variant,
}

#[derive(Serialize)]
struct EvalDocument<'a> {
    config: &'a EvalSettings,
    first_mismatch_index: Option<usize>,
    fraction: f64,
    matched: usize,
    passed: bool,
    segments: &'a [spike_tyke::SegmentMatch],
    threshold: f64,
    tolerance: f64,
    total: usize,
}

/// Resolves settings and runs the evaluation without writing anything.
fn run_evaluation(args: &EvaluateArgs, common: &Common) -> CliResult<(EvalSettings, Evaluation, TrainConfig)> {
    let file = &common.file;
    let d = EvalConfig::default();
    let eval = EvalConfig {
        t0: resolve(args.t0, file.t0, d.t0),
        t_max: resolve(args.t_max, file.t_max, d.t_max),
        dt: resolve(args.dt, file.dt, d.dt),
        tolerance: resolve(args.tolerance, file.tolerance, d.tolerance),
    };
    let threshold = resolve(args.threshold, file.threshold, DEFAULT_THRESHOLD);
    if !(threshold.is_finite() && threshold >= 0.0) {
        return Err(CliError::Validation(format!(
            "threshold = {threshold} must be finite and >= 0"
        )));
    }
    let reference = match args.reference.as_ref().or(file.reference.as_ref()) {
        Some(s) => s.parse::<ReferenceKind>().map_err(CliError::Validation)?,
        None => ReferenceKind::Script,
    };
    let train_config = TrainConfig {
        grid: WavelengthGrid::REFERENCE,
        temperatures: resolve_temperatures(&args.curve, file, default_temperatures())?,
        transform: resolve_transform(&args.transform, file)?,
        variant: parse_variant(args.curve.variant, &file.variant)?,
    };
    let constants = common.constants;
    let variant = train_config.variant;
    let evaluation = evaluate_against(&eval, &train_config, &constants, |grid, t| match reference {
        ReferenceKind::Script => script_curve(variant, grid, t, &constants),
        ReferenceKind::Model => sample_curve(grid, t, variant, &constants)
            .map(|c| c.values)
            .unwrap_or_default(),
    })?;

    let settings = EvalSettings {
        area: train_config.transform.area(),
        constants,
        current: train_config.transform.current(),
        dt: eval.dt,
        format: common.format,
        output: output_label(&common.output),
        reference,
        t0: eval.t0,
        t_max: eval.t_max,
        temperatures: train_config.temperatures.clone(),
        threshold,
        tolerance: eval.tolerance,
        variant,
    };
    Ok((settings, evaluation, train_config))
}

pub fn evaluate(args: &EvaluateArgs) -> CliResult<i32> {
    let common = load_common(&args.common, Format::Json)?;
    let (settings, evaluation, train_config) = run_evaluation(args, &common)?;
    let summary = evaluation.summary;
    let passed = summary.passes(settings.threshold);

    let bytes = match common.format {
        Format::Json => json_bytes(&EvalDocument {
            config: &settings,
            first_mismatch_index: summary.first_mismatch_index,
            fraction: summary.fraction,
            matched: summary.matched,
            passed,
            segments: &evaluation.segments,
            threshold: settings.threshold,
            tolerance: summary.tolerance,
            total: summary.total,
        })?,
        Format::Csv => csv_bytes(
            &["total", "matched", "fraction", "tolerance"],
            &[vec![
                Cell::Int(summary.total as u64),
                Cell::Int(summary.matched as u64),
                Cell::Float(summary.fraction),
                Cell::Float(summary.tolerance),
            ]],
        )?,
        Format::Svg => {
            let grid = evaluation.grid;
            let c = common.constants;
            let times: Vec<f64> = grid.wavelengths().map(|l| l / c.c).collect();
            let model = generate_train(
                &TrainConfig {
                    grid,
                    ..train_config.clone()
                },
                &c,
            )?;
            let mut series = Vec::new();
            for (k, seg) in model.segments().iter().enumerate() {
                series.push(Series {
                    label: format!("model {} K", seg.temperature),
                    points: times.iter().copied().zip(model.block(k + 1)?.iter().copied()).collect(),
                    style: Style::Line,
                });
            }
            series.push(Series {
                label: format!(
                    "{}/{} matched ({:.2}%)",
                    summary.matched,
                    summary.total,
                    100.0 * summary.fraction
                ),
                points: Vec::new(),
                style: Style::Markers,
            });
            Plot {
                title: "Matched Points".into(),
                x_label: "Time (s)".into(),
                y_label: "Potential (V)".into(),
                series,
            }
            .render()
            .into_bytes()
        }
    };
    write_output(&common.output, &bytes)?;
    Ok(if passed { EXIT_OK } else { EXIT_BELOW_THRESHOLD })
}
