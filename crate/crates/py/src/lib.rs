use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use spike_tyke as st;
use spike_tyke::planck::Variant;

create_exception!(spiketyke, SaturationError, PyValueError);

fn to_py(e: st::Error) -> PyErr {
    match e {
        st::Error::Saturation { .. } | st::Error::FluxOutOfDomain { .. } => {
            SaturationError::new_err(e.to_string())
        }
        st::Error::SegmentOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_variant(s: &str) -> PyResult<Variant> {
    s.parse::<Variant>().map_err(PyValueError::new_err)
}

fn consts(c: Option<PyRef<'_, PhysicalConstants>>) -> st::PhysicalConstants {
    c.map(|c| c.0).unwrap_or_default()
}

#[pyclass(frozen, module = "spiketyke")]
struct PhysicalConstants(st::PhysicalConstants);

#[pymethods]
impl PhysicalConstants {
    #[new]
    #[pyo3(signature = (h=6.6261e-34, c=2.9979e8, k=1.3807e-23, e_charge=1.60218e-19))]
    fn new(h: f64, c: f64, k: f64, e_charge: f64) -> PyResult<Self> {
        st::PhysicalConstants::new(h, c, k, e_charge)
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn listing() -> Self {
        Self(st::PhysicalConstants::LISTING)
    }

    #[staticmethod]
    fn prose() -> Self {
        Self(st::PhysicalConstants::PROSE)
    }

    #[getter]
    fn h(&self) -> f64 {
        self.0.h
    }

    #[getter]
    fn c(&self) -> f64 {
        self.0.c
    }

    #[getter]
    fn k(&self) -> f64 {
        self.0.k
    }

    #[getter]
    fn e_charge(&self) -> f64 {
        self.0.e_charge
    }

    fn __repr__(&self) -> String {
        format!(
            "PhysicalConstants(h={:e}, c={:e}, k={:e}, e_charge={:e})",
            self.0.h, self.0.c, self.0.k, self.0.e_charge
        )
    }
}

#[pyclass(frozen, module = "spiketyke")]
struct WavelengthGrid(st::WavelengthGrid);

#[pymethods]
impl WavelengthGrid {
    #[new]
    #[pyo3(signature = (start=1e-9, step=10e-9, count=300))]
    fn new(start: f64, step: f64, count: usize) -> PyResult<Self> {
        st::WavelengthGrid::new(start, step, count)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn start(&self) -> f64 {
        self.0.start()
    }

    #[getter]
    fn step(&self) -> f64 {
        self.0.step()
    }

    #[getter]
    fn count(&self) -> usize {
        self.0.count()
    }

    fn wavelengths(&self) -> Vec<f64> {
        self.0.wavelengths().collect()
    }

    fn __len__(&self) -> usize {
        self.0.count()
    }
}

#[pyclass(frozen, module = "spiketyke")]
struct PlanckCurve(st::PlanckCurve);

#[pymethods]
impl PlanckCurve {
    #[getter]
    fn temperature(&self) -> f64 {
        self.0.temperature
    }

    #[getter]
    fn variant(&self) -> &'static str {
        self.0.variant.as_str()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.values.clone()
    }

    #[getter]
    fn grid(&self) -> WavelengthGrid {
        WavelengthGrid(self.0.grid)
    }

    fn wavelengths(&self) -> Vec<f64> {
        self.0.wavelengths()
    }

    fn argmax(&self) -> usize {
        self.0.argmax()
    }

    fn peak_wavelength(&self) -> f64 {
        self.0.peak_wavelength()
    }

    fn __len__(&self) -> usize {
        self.0.values.len()
    }
}

#[pyclass(frozen, module = "spiketyke")]
struct SpikeTrain(st::SpikeTrain);

#[pymethods]
impl SpikeTrain {
    #[getter]
    fn sample_period(&self) -> f64 {
        self.0.sample_period()
    }

    #[getter]
    fn potentials(&self) -> Vec<f64> {
        self.0.potentials().to_vec()
    }

    #[getter]
    fn prefix_length(&self) -> usize {
        self.0.prefix_length()
    }

    /// `(start_index, length, temperature)` for each temperature segment.
    #[getter]
    fn segments(&self) -> Vec<(usize, usize, f64)> {
        self.0
            .segments()
            .iter()
            .map(|s| (s.start_index, s.length, s.temperature))
            .collect()
    }

    fn segment_ids(&self) -> Vec<usize> {
        self.0.segment_ids()
    }

    fn block(&self, segment_id: usize) -> PyResult<Vec<f64>> {
        self.0.block(segment_id).map(<[f64]>::to_vec).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyclass(frozen, module = "spiketyke")]
struct MemristorState(st::MemristorState);

#[pymethods]
impl MemristorState {
    /// `eta` is the bias sign, +1 or -1.
    #[new]
    #[pyo3(signature = (r0, eta, delta_r, q0, flux=0.0))]
    fn new(r0: f64, eta: i32, delta_r: f64, q0: f64, flux: f64) -> PyResult<Self> {
        let eta = match eta {
            1 => st::BiasSign::Positive,
            -1 => st::BiasSign::Negative,
            other => return Err(PyValueError::new_err(format!("eta must be +1 or -1, got {other}"))),
        };
        st::MemristorState::new(r0, eta, delta_r, q0, flux)
            .map(Self)
            .map_err(to_py)
    }

    fn with_flux(&self, flux: f64) -> PyResult<Self> {
        self.0.with_flux(flux).map(Self).map_err(to_py)
    }

    #[getter]
    fn flux(&self) -> f64 {
        self.0.flux()
    }

    #[getter]
    fn r0(&self) -> f64 {
        self.0.r0()
    }

    fn radicand(&self) -> f64 {
        self.0.radicand()
    }

    fn memristance(&self) -> PyResult<f64> {
        st::memristance(&self.0).map_err(to_py)
    }
}

#[pyclass(frozen, module = "spiketyke")]
struct StdpParams(st::StdpParams);

#[pymethods]
impl StdpParams {
    #[new]
    fn new(mu: f64, tau_d: f64) -> PyResult<Self> {
        st::StdpParams::new(mu, tau_d).map(Self).map_err(to_py)
    }

    #[getter]
    fn mu(&self) -> f64 {
        self.0.mu()
    }

    #[getter]
    fn tau_d(&self) -> f64 {
        self.0.tau_d()
    }
}

#[pyclass(frozen, module = "spiketyke")]
struct MatchReport(st::MatchReport);

#[pymethods]
impl MatchReport {
    #[getter]
    fn total(&self) -> usize {
        self.0.total
    }

    #[getter]
    fn matched(&self) -> usize {
        self.0.matched
    }

    #[getter]
    fn fraction(&self) -> f64 {
        self.0.fraction
    }

    #[getter]
    fn tolerance(&self) -> f64 {
        self.0.tolerance
    }

    #[getter]
    fn first_mismatch_index(&self) -> Option<usize> {
        self.0.first_mismatch_index
    }

    fn __repr__(&self) -> String {
        format!(
            "MatchReport(matched={}, total={}, fraction={}, tolerance={:e})",
            self.0.matched, self.0.total, self.0.fraction, self.0.tolerance
        )
    }
}

#[pyfunction]
#[pyo3(signature = (wavelength, temperature, constants=None))]
fn planck_radiance(
    wavelength: f64,
    temperature: f64,
    constants: Option<PyRef<'_, PhysicalConstants>>,
) -> PyResult<f64> {
    st::planck_radiance(wavelength, temperature, &consts(constants)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (wavelength, temperature, constants=None))]
fn planck_energy_density(
    wavelength: f64,
    temperature: f64,
    constants: Option<PyRef<'_, PhysicalConstants>>,
) -> PyResult<f64> {
    st::planck_energy_density(wavelength, temperature, &consts(constants)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (grid, temperature, variant="energy_density", constants=None))]
fn sample_curve(
    grid: PyRef<'_, WavelengthGrid>,
    temperature: f64,
    variant: &str,
    constants: Option<PyRef<'_, PhysicalConstants>>,
) -> PyResult<PlanckCurve> {
    st::sample_curve(&grid.0, temperature, parse_variant(variant)?, &consts(constants))
        .map(PlanckCurve)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n, frequency, constants=None))]
fn oscillator_energy(
    n: u64,
    frequency: f64,
    constants: Option<PyRef<'_, PhysicalConstants>>,
) -> PyResult<f64> {
    st::oscillator_energy(n, frequency, &consts(constants))
        .map(|e| e.energy)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n, charge, constants=None))]
fn quantized_resistance(
    n: u64,
    charge: f64,
    constants: Option<PyRef<'_, PhysicalConstants>>,
) -> PyResult<f64> {
    st::quantized_resistance(n, charge, &consts(constants))
        .map(|r| r.resistance)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (charge, constants=None))]
fn smallest_resistance(charge: f64, constants: Option<PyRef<'_, PhysicalConstants>>) -> PyResult<f64> {
    st::smallest_resistance(charge, &consts(constants)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (current, charge, constants=None))]
fn tyke_potential(
    current: f64,
    charge: f64,
    constants: Option<PyRef<'_, PhysicalConstants>>,
) -> PyResult<f64> {
    st::tyke_potential(current, charge, &consts(constants))
        .map(|t| t.potential)
        .map_err(to_py)
}

#[pyfunction]
fn phase_fraction(theta: f64) -> PyResult<f64> {
    st::phase_fraction(theta).map_err(to_py)
}

/// Returns the derivation chain as a dict of power, energy, time, current,
/// voltage and resistance.
#[pyfunction]
#[pyo3(signature = (n, frequency, current, duration, constants=None))]
fn verify_derivation<'py>(
    py: Python<'py>,
    n: u64,
    frequency: f64,
    current: f64,
    duration: f64,
    constants: Option<PyRef<'_, PhysicalConstants>>,
) -> PyResult<Bound<'py, PyDict>> {
    let t = st::verify_derivation(n, frequency, current, duration, &consts(constants))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("power", t.power)?;
    d.set_item("energy", t.energy)?;
    d.set_item("time", t.time)?;
    d.set_item("current", t.current)?;
    d.set_item("voltage", t.voltage)?;
    d.set_item("resistance", t.resistance)?;
    Ok(d)
}

#[pyfunction]
fn memristance(state: PyRef<'_, MemristorState>) -> PyResult<f64> {
    st::memristance(&state.0).map_err(to_py)
}

#[pyfunction]
fn flux_sweep(state: PyRef<'_, MemristorState>, flux_values: Vec<f64>) -> PyResult<Vec<f64>> {
    st::flux_sweep(&state.0, &flux_values).map_err(to_py)
}

#[pyfunction]
fn stdp_delta(t_post: f64, t_pre: f64, params: PyRef<'_, StdpParams>) -> PyResult<f64> {
    let pair = st::SpikePair::new(t_post, t_pre).map_err(to_py)?;
    Ok(st::stdp_delta(pair, &params.0))
}

#[pyfunction]
fn apply_stdp(w: f64, t_post: f64, t_pre: f64, params: PyRef<'_, StdpParams>) -> PyResult<f64> {
    let pair = st::SpikePair::new(t_post, t_pre).map_err(to_py)?;
    let w = st::SynapseWeight::new(w).map_err(to_py)?;
    Ok(st::apply_stdp(w, pair, &params.0).value())
}

#[pyfunction]
#[pyo3(signature = (wavelength, constants=None))]
fn wavelength_to_time(wavelength: f64, constants: Option<PyRef<'_, PhysicalConstants>>) -> PyResult<f64> {
    st::wavelength_to_time(wavelength, &consts(constants)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (y, area=1.0, current=1.0))]
fn intensity_to_potential(y: f64, area: f64, current: f64) -> PyResult<f64> {
    let params = st::TransformParams::new(area, current).map_err(to_py)?;
    Ok(st::intensity_to_potential(y, &params))
}

fn train_config(
    temperatures: Option<Vec<f64>>,
    grid: Option<PyRef<'_, WavelengthGrid>>,
    area: f64,
    current: f64,
    variant: &str,
) -> PyResult<st::TrainConfig> {
    let d = st::TrainConfig::default();
    Ok(st::TrainConfig {
        grid: grid.map(|g| g.0).unwrap_or(d.grid),
        temperatures: temperatures.unwrap_or(d.temperatures),
        transform: st::TransformParams::new(area, current).map_err(to_py)?,
        variant: parse_variant(variant)?,
    })
}

#[pyfunction]
#[pyo3(signature = (temperatures=None, grid=None, area=1.0, current=1.0, variant="energy_density", constants=None))]
fn generate_train(
    temperatures: Option<Vec<f64>>,
    grid: Option<PyRef<'_, WavelengthGrid>>,
    area: f64,
    current: f64,
    variant: &str,
    constants: Option<PyRef<'_, PhysicalConstants>>,
) -> PyResult<SpikeTrain> {
    let cfg = train_config(temperatures, grid, area, current, variant)?;
    st::generate_train(&cfg, &consts(constants))
        .map(SpikeTrain)
        .map_err(to_py)
}

#[pyfunction]
fn train_times(train: PyRef<'_, SpikeTrain>, t0: f64) -> PyResult<Vec<f64>> {
    st::train_times(&train.0, t0).map_err(to_py)
}

#[pyfunction]
fn segment_accumulation(train: PyRef<'_, SpikeTrain>, segment_id: usize) -> PyResult<f64> {
    st::segment_accumulation(&train.0, segment_id).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (a, b, tolerance=st::evaluation::DEFAULT_TOLERANCE))]
fn count_matches(a: Vec<f64>, b: Vec<f64>, tolerance: f64) -> PyResult<MatchReport> {
    st::count_matches(&a, &b, tolerance)
        .map(MatchReport)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (
    t0=3.3357e-18,
    t_max=9.9770e-15,
    dt=3.3357e-17,
    tolerance=st::evaluation::DEFAULT_TOLERANCE,
    temperatures=None,
    area=1.0,
    current=1.0,
    variant="energy_density",
    constants=None,
))]
#[allow(clippy::too_many_arguments)]
fn evaluate_model(
    t0: f64,
    t_max: f64,
    dt: f64,
    tolerance: f64,
    temperatures: Option<Vec<f64>>,
    area: f64,
    current: f64,
    variant: &str,
    constants: Option<PyRef<'_, PhysicalConstants>>,
) -> PyResult<MatchReport> {
    let cfg = st::EvalConfig {
        t0,
        t_max,
        dt,
        tolerance,
    };
    let train = train_config(temperatures, None, area, current, variant)?;
    st::evaluate_model(&cfg, &train, &consts(constants))
        .map(MatchReport)
        .map_err(to_py)
}

#[pymodule]
fn spiketyke(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SaturationError", m.py().get_type::<SaturationError>())?;

    m.add_class::<PhysicalConstants>()?;
    m.add_class::<WavelengthGrid>()?;
    m.add_class::<PlanckCurve>()?;
    m.add_class::<SpikeTrain>()?;
    m.add_class::<MemristorState>()?;
    m.add_class::<StdpParams>()?;
    m.add_class::<MatchReport>()?;

    m.add_function(wrap_pyfunction!(planck_radiance, m)?)?;
    m.add_function(wrap_pyfunction!(planck_energy_density, m)?)?;
    m.add_function(wrap_pyfunction!(sample_curve, m)?)?;
    m.add_function(wrap_pyfunction!(oscillator_energy, m)?)?;
    m.add_function(wrap_pyfunction!(quantized_resistance, m)?)?;
    m.add_function(wrap_pyfunction!(smallest_resistance, m)?)?;
    m.add_function(wrap_pyfunction!(tyke_potential, m)?)?;
    m.add_function(wrap_pyfunction!(phase_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(verify_derivation, m)?)?;
    m.add_function(wrap_pyfunction!(memristance, m)?)?;
    m.add_function(wrap_pyfunction!(flux_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(stdp_delta, m)?)?;
    m.add_function(wrap_pyfunction!(apply_stdp, m)?)?;
    m.add_function(wrap_pyfunction!(wavelength_to_time, m)?)?;
    m.add_function(wrap_pyfunction!(intensity_to_potential, m)?)?;
    m.add_function(wrap_pyfunction!(generate_train, m)?)?;
    m.add_function(wrap_pyfunction!(train_times, m)?)?;
    m.add_function(wrap_pyfunction!(segment_accumulation, m)?)?;
    m.add_function(wrap_pyfunction!(count_matches, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_model, m)?)?;
    Ok(())
}
