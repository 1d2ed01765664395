//! Python bindings for the anyondec simulator.

use anyondec::markovian::{self, IntegratorSettings};
use anyondec::{bath, compare as cmp, params, shorttime, GridSpec, QuadratureSettings, Spacing};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(anyondec_py, NumericalError, PyRuntimeError);

fn to_py(e: anyondec::Error) -> PyErr {
    if e.is_numerical() {
        NumericalError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn quadrature(rel_tol: Option<f64>) -> QuadratureSettings {
    let mut q = QuadratureSettings::default();
    if let Some(r) = rel_tol {
        q.rel_tol = r;
    }
    q
}

/// Laboratory parameters; energies in kelvin, lengths in metres.
#[pyclass(from_py_object, module = "anyondec_py")]
#[derive(Clone, Copy)]
struct PhysicalParams(params::PhysicalParams);

#[pymethods]
impl PhysicalParams {
    #[new]
    #[pyo3(signature = (
        dielectric_constant = 10.0,
        edge_velocity = 1.0e5,
        splitting = 0.1,
        temperature = 0.0,
        antidot_separation = 100.0e-9,
        qubit_edge_distance = 3.0e-6,
        filling_denominator = 3,
    ))]
    fn new(
        dielectric_constant: f64,
        edge_velocity: f64,
        splitting: f64,
        temperature: f64,
        antidot_separation: f64,
        qubit_edge_distance: f64,
        filling_denominator: u32,
    ) -> PyResult<Self> {
        let p = params::PhysicalParams {
            dielectric_constant,
            edge_velocity,
            splitting,
            temperature,
            antidot_separation,
            qubit_edge_distance,
            filling_denominator,
            bias: 0.0,
        };
        p.validate().map_err(to_py)?;
        Ok(PhysicalParams(p))
    }

    #[staticmethod]
    fn experimental() -> Self {
        PhysicalParams(params::PhysicalParams::experimental())
    }

    #[getter]
    fn temperature(&self) -> f64 {
        self.0.temperature
    }

    #[getter]
    fn splitting(&self) -> f64 {
        self.0.splitting
    }

    #[getter]
    fn qubit_edge_distance(&self) -> f64 {
        self.0.qubit_edge_distance
    }

    #[getter]
    fn filling_denominator(&self) -> u32 {
        self.0.filling_denominator
    }

    #[allow(clippy::wrong_self_convention)]
    fn to_model(&self) -> PyResult<ModelParams> {
        params::to_model(&self.0).map(ModelParams).map_err(to_py)
    }

    /// (Γ in 1/s, ħΓ/Ω) at zero temperature.
    fn dissipation_rate(&self) -> PyResult<(f64, f64)> {
        let r = params::dissipation_rate_conventional(&self.0).map_err(to_py)?;
        Ok((r.gamma, r.ratio))
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

/// Model parameters in angular-frequency units (rad/s).
#[pyclass(from_py_object, module = "anyondec_py")]
#[derive(Clone, Copy)]
struct ModelParams(params::ModelParams);

#[pymethods]
impl ModelParams {
    #[new]
    #[pyo3(signature = (omega, temperature, cutoff, alpha, amplitude, rate_cutoff = None))]
    fn new(
        omega: f64,
        temperature: f64,
        cutoff: f64,
        alpha: f64,
        amplitude: f64,
        rate_cutoff: Option<f64>,
    ) -> PyResult<Self> {
        let mut m = params::ModelParams::new(omega, temperature, cutoff, alpha, amplitude)
            .map_err(to_py)?;
        if let Some(rc) = rate_cutoff {
            m = m.with_rate_cutoff(rc).map_err(to_py)?;
        }
        Ok(ModelParams(m))
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.0.omega
    }

    #[getter]
    fn temperature(&self) -> f64 {
        self.0.temperature
    }

    #[getter]
    fn cutoff(&self) -> f64 {
        self.0.cutoff
    }

    #[getter]
    fn rate_cutoff(&self) -> f64 {
        self.0.rate_cutoff
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha
    }

    #[getter]
    fn amplitude(&self) -> f64 {
        self.0.amplitude
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

/// Markovian coefficients Γ, λ and the shift ω, all in 1/s.
#[pyclass(from_py_object, module = "anyondec_py")]
#[derive(Clone, Copy)]
struct RateSet(bath::RateSet);

#[pymethods]
impl RateSet {
    #[new]
    fn new(gamma: f64, lambda_: f64, shift: f64) -> Self {
        RateSet(bath::RateSet {
            gamma,
            lambda: lambda_,
            shift,
        })
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.0.gamma
    }

    #[getter]
    fn lambda_(&self) -> f64 {
        self.0.lambda
    }

    #[getter]
    fn shift(&self) -> f64 {
        self.0.shift
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyclass(from_py_object, module = "anyondec_py")]
#[derive(Clone, Copy)]
struct BlochState(markovian::BlochState);

#[pymethods]
impl BlochState {
    #[new]
    #[pyo3(signature = (x = 0.0, y = 0.0, z = 1.0, t = 0.0))]
    fn new(x: f64, y: f64, z: f64, t: f64) -> PyResult<Self> {
        markovian::BlochState::new(x, y, z, t)
            .map(BlochState)
            .map_err(to_py)
    }

    #[getter]
    fn x(&self) -> f64 {
        self.0.x
    }

    #[getter]
    fn y(&self) -> f64 {
        self.0.y
    }

    #[getter]
    fn z(&self) -> f64 {
        self.0.z
    }

    #[getter]
    fn t(&self) -> f64 {
        self.0.t
    }

    fn purity(&self) -> f64 {
        markovian::purity(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyfunction]
#[pyo3(signature = (model, rel_tol = None))]
fn rates(model: ModelParams, rel_tol: Option<f64>) -> PyResult<RateSet> {
    bath::rates(&model.0, &quadrature(rel_tol))
        .map(RateSet)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (model, rel_tol = None))]
fn shift_omega(model: ModelParams, rel_tol: Option<f64>) -> PyResult<f64> {
    bath::shift_omega(&model.0, &quadrature(rel_tol)).map_err(to_py)
}

/// I(t) by quadrature.
#[pyfunction]
#[pyo3(signature = (t, model, rel_tol = None))]
fn integral_i(t: f64, model: ModelParams, rel_tol: Option<f64>) -> PyResult<f64> {
    bath::integral_i(t, &model.0, &quadrature(rel_tol)).map_err(to_py)
}

/// (asymptotic I(t), regime name).
#[pyfunction]
fn integral_i_asymptotic(t: f64, model: ModelParams) -> PyResult<(f64, &'static str)> {
    let (v, r) = bath::integral_i_asymptotic(t, &model.0).map_err(to_py)?;
    Ok((v, r.as_str()))
}

#[pyfunction]
fn b_squared(t: f64, model: ModelParams) -> PyResult<f64> {
    shorttime::b_squared(t, &model.0, &QuadratureSettings::default()).map_err(to_py)
}

#[pyfunction]
fn purity_shorttime(t: f64, model: ModelParams) -> PyResult<f64> {
    shorttime::purity_shorttime(t, &model.0, &QuadratureSettings::default()).map_err(to_py)
}

/// (asymptotic purity, regime name).
#[pyfunction]
fn purity_asymptotic(t: f64, model: ModelParams) -> PyResult<(f64, &'static str)> {
    let p = shorttime::purity_asymptotic(t, &model.0).map_err(to_py)?;
    Ok((p.purity, p.regime.as_str()))
}

#[pyfunction]
fn closed_form(state: BlochState, rates: RateSet, model: ModelParams, t: f64) -> BlochState {
    BlochState(markovian::closed_form(&state.0, &rates.0, &model.0, t))
}

/// Adaptive integration of the Bloch equations sampled at `times`, which
/// must start at the state's time.
#[pyfunction]
#[pyo3(signature = (state, rates, model, times, rel_tol = 1e-10, abs_tol = 1e-12))]
fn evolve(
    state: BlochState,
    rates: RateSet,
    model: ModelParams,
    times: Vec<f64>,
    rel_tol: f64,
    abs_tol: f64,
) -> PyResult<Vec<BlochState>> {
    let settings = IntegratorSettings::adaptive(rel_tol, abs_tol);
    let tr = markovian::evolve(&state.0, &rates.0, &model.0, &times, &settings).map_err(to_py)?;
    Ok(tr.states.into_iter().map(BlochState).collect())
}

#[pyfunction]
fn steady_state(rates: RateSet, model: ModelParams) -> PyResult<BlochState> {
    markovian::steady_state(&rates.0, &model.0)
        .map(BlochState)
        .map_err(to_py)
}

/// Markovian and short-time purities on a shared grid (seconds), as a dict
/// of lists plus summary values.
#[pyfunction]
#[pyo3(signature = (physical, t_min, t_max, points = 400, logarithmic = true, state = None, threshold = None))]
#[allow(clippy::too_many_arguments)]
fn compare<'py>(
    py: Python<'py>,
    physical: PhysicalParams,
    t_min: f64,
    t_max: f64,
    points: usize,
    logarithmic: bool,
    state: Option<BlochState>,
    threshold: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let grid = GridSpec {
        t_min,
        t_max,
        points,
        spacing: if logarithmic {
            Spacing::Logarithmic
        } else {
            Spacing::Linear
        },
    };
    let settings = cmp::CompareSettings {
        quadrature: QuadratureSettings::default(),
        threshold,
    };
    let s0 = state.map_or_else(markovian::BlochState::localized, |s| s.0);
    let report = cmp::compare(&physical.0, &s0, &grid, &settings).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("times", report.times)?;
    d.set_item("markovian", report.markovian)?;
    d.set_item("shorttime_exact", report.shorttime_exact)?;
    d.set_item("shorttime_asymptotic", report.shorttime_asymptotic)?;
    d.set_item(
        "regimes",
        report
            .regimes
            .iter()
            .map(|r| r.as_str())
            .collect::<Vec<_>>(),
    )?;
    d.set_item("differences", report.differences)?;
    d.set_item("divergence_time", report.divergence_time)?;
    d.set_item("limit_markovian", report.limits.markovian)?;
    d.set_item("limit_shorttime", report.limits.shorttime)?;
    d.set_item("rates", RateSet(report.rates))?;
    d.set_item("model", ModelParams(report.model))?;
    Ok(d)
}

#[pymodule]
fn anyondec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PhysicalParams>()?;
    m.add_class::<ModelParams>()?;
    m.add_class::<RateSet>()?;
    m.add_class::<BlochState>()?;
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add_function(wrap_pyfunction!(rates, m)?)?;
    m.add_function(wrap_pyfunction!(shift_omega, m)?)?;
    m.add_function(wrap_pyfunction!(integral_i, m)?)?;
    m.add_function(wrap_pyfunction!(integral_i_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(b_squared, m)?)?;
    m.add_function(wrap_pyfunction!(purity_shorttime, m)?)?;
    m.add_function(wrap_pyfunction!(purity_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(steady_state, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    Ok(())
}
