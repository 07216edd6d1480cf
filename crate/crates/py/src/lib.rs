use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hole_anneal::{analysis, annealing, dynamics, model};
use hole_anneal::{BisectionConfig, Error, StepPolicy, Variant};

fn to_py(err: Error) -> PyErr {
    if err.is_computational() {
        PyRuntimeError::new_err(err.to_string())
    } else {
        PyValueError::new_err(err.to_string())
    }
}

fn parse_kind(kind: &str) -> PyResult<model::ScheduleKind> {
    kind.parse().map_err(to_py)
}

fn steps(n_steps: Option<usize>) -> StepPolicy {
    n_steps.map_or(StepPolicy::Auto, StepPolicy::Fixed)
}

#[pyclass(name = "ModelParams", frozen)]
struct PyModelParams {
    inner: model::ModelParams,
}

#[pymethods]
impl PyModelParams {
    #[new]
    fn new(n: usize, gamma0: f64, r: f64) -> PyResult<Self> {
        model::ModelParams::new(n, gamma0, r).map(|inner| Self { inner }).map_err(to_py)
    }

    #[staticmethod]
    fn from_chi0(n: usize, gamma0: f64, chi0: f64) -> PyResult<Self> {
        model::ModelParams::from_chi0(n, gamma0, chi0).map(|inner| Self { inner }).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn gamma0(&self) -> f64 {
        self.inner.gamma0()
    }

    #[getter]
    fn r(&self) -> f64 {
        self.inner.r()
    }

    #[getter]
    fn chi0(&self) -> f64 {
        self.inner.chi0()
    }

    fn __repr__(&self) -> String {
        format!("ModelParams(n={}, gamma0={}, r={})", self.inner.n(), self.inner.gamma0(), self.inner.r())
    }
}

#[pyclass(name = "Schedule", frozen)]
struct PySchedule {
    inner: model::Schedule,
}

#[pymethods]
impl PySchedule {
    /// `kind` is "const-gamma" or "const-chi".
    #[new]
    fn new(kind: &str, params: PyRef<'_, PyModelParams>, tau: f64) -> PyResult<Self> {
        model::Schedule::new(parse_kind(kind)?, params.inner, tau)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind.as_str()
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.inner.tau()
    }

    /// `(gamma, chi)` at reduced time `s`.
    fn couplings(&self, s: f64) -> PyResult<(f64, f64)> {
        self.inner.couplings(s).map_err(to_py)
    }

    fn default_steps(&self) -> usize {
        dynamics::default_steps(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Schedule(kind='{}', tau={})", self.inner.kind, self.inner.tau())
    }
}

#[pyclass(name = "RunRecord", frozen, get_all)]
struct PyRunRecord {
    n_steps: usize,
    /// List of `(s, p_w, gap)`.
    samples: Vec<(f64, f64, f64)>,
    final_p_w: f64,
    norm_drift: f64,
}

impl From<dynamics::RunRecord> for PyRunRecord {
    fn from(r: dynamics::RunRecord) -> Self {
        Self {
            n_steps: r.n_steps,
            samples: r.samples.iter().map(|s| (s.s, s.p_w, s.gap)).collect(),
            final_p_w: r.final_p_w,
            norm_drift: r.norm_drift,
        }
    }
}

#[pyclass(name = "TauMin", frozen, get_all)]
struct PyTauMin {
    tau_min: f64,
    tau_lo: f64,
    tau_hi: f64,
    p_lo: f64,
    p_hi: f64,
    iterations: usize,
    evaluations: usize,
}

#[pyclass(name = "AdiabaticFactor", frozen, get_all)]
struct PyAdiabaticFactor {
    numerator: f64,
    min_gap_sq: f64,
    alpha: f64,
    s_at_max: f64,
    s_at_min_gap: f64,
}

#[pyclass(name = "GapScalingReport", frozen, get_all)]
struct PyGapScalingReport {
    n_values: Vec<usize>,
    min_gaps: Vec<f64>,
    s_values: Vec<f64>,
    fitted_exponent: f64,
    variant: &'static str,
}

#[pyfunction]
fn eigenvalues(params: PyRef<'_, PyModelParams>, gamma: f64, chi: f64) -> PyResult<(f64, f64)> {
    model::eigenvalues(&params.inner, gamma, chi).map_err(to_py)
}

#[pyfunction]
fn gap(params: PyRef<'_, PyModelParams>, gamma: f64, chi: f64) -> PyResult<f64> {
    model::gap(&params.inner, gamma, chi).map_err(to_py)
}

#[pyfunction]
fn coefficients(params: PyRef<'_, PyModelParams>, gamma: f64, chi: f64) -> PyResult<(f64, f64)> {
    model::coefficients(&params.inner, gamma, chi).map_err(to_py)
}

#[pyfunction]
fn reduced_hamiltonian(params: PyRef<'_, PyModelParams>, gamma: f64, chi: f64) -> PyResult<[[f64; 2]; 2]> {
    model::reduced_hamiltonian(&params.inner, gamma, chi)
        .map(|h| h.to_array())
        .map_err(to_py)
}

#[pyfunction]
fn ground_hole_probability(params: PyRef<'_, PyModelParams>, gamma: f64, chi: f64) -> PyResult<f64> {
    model::ground_hole_probability(&params.inner, gamma, chi).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (schedule, n_steps=None, n_samples=512))]
fn evolve_reduced(
    py: Python<'_>,
    schedule: PyRef<'_, PySchedule>,
    n_steps: Option<usize>,
    n_samples: usize,
) -> PyResult<PyRunRecord> {
    let s = schedule.inner;
    py.detach(|| dynamics::evolve_reduced(&s, steps(n_steps).steps_for(&s), n_samples))
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (schedule, w=0, n_steps=None, n_samples=65))]
fn evolve_full(
    py: Python<'_>,
    schedule: PyRef<'_, PySchedule>,
    w: usize,
    n_steps: Option<usize>,
    n_samples: usize,
) -> PyResult<PyRunRecord> {
    let s = schedule.inner;
    py.detach(|| dynamics::evolve_full(&s, w, steps(n_steps).steps_for(&s), n_samples))
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn convergence_check(py: Python<'_>, schedule: PyRef<'_, PySchedule>, n_steps: usize) -> PyResult<f64> {
    let s = schedule.inner;
    py.detach(|| dynamics::convergence_check(&s, n_steps)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (schedule, n_steps=None))]
fn success_probability(py: Python<'_>, schedule: PyRef<'_, PySchedule>, n_steps: Option<usize>) -> PyResult<f64> {
    let s = schedule.inner;
    py.detach(|| annealing::success_probability(&s, steps(n_steps))).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (params, kind, p_target, accuracy=1e-4, tau_lo=None, tau_hi=None, max_iters=200, n_steps=None))]
#[allow(clippy::too_many_arguments)]
fn tau_min(
    py: Python<'_>,
    params: PyRef<'_, PyModelParams>,
    kind: &str,
    p_target: f64,
    accuracy: f64,
    tau_lo: Option<f64>,
    tau_hi: Option<f64>,
    max_iters: usize,
    n_steps: Option<usize>,
) -> PyResult<PyTauMin> {
    let kind = parse_kind(kind)?;
    let p = params.inner;
    let config = BisectionConfig { p_target, accuracy, tau_lo, tau_hi, max_iters, steps: steps(n_steps) };
    let t = py.detach(|| annealing::tau_min(&p, kind, &config)).map_err(to_py)?;
    Ok(PyTauMin {
        tau_min: t.tau_min,
        tau_lo: t.tau_lo,
        tau_hi: t.tau_hi,
        p_lo: t.p_lo,
        p_hi: t.p_hi,
        iterations: t.iterations,
        evaluations: t.evaluations,
    })
}

#[pyfunction]
#[pyo3(signature = (schedule, n_grid=1024))]
fn adiabatic_factor_numeric(schedule: PyRef<'_, PySchedule>, n_grid: usize) -> PyResult<PyAdiabaticFactor> {
    let a = annealing::adiabatic_factor_numeric(&schedule.inner, n_grid).map_err(to_py)?;
    Ok(PyAdiabaticFactor {
        numerator: a.numerator,
        min_gap_sq: a.min_gap_sq,
        alpha: a.alpha,
        s_at_max: a.s_at_max,
        s_at_min_gap: a.s_at_min_gap,
    })
}

#[pyfunction]
fn adiabatic_factor_closed_form(params: PyRef<'_, PyModelParams>, kind: &str) -> PyResult<f64> {
    annealing::adiabatic_factor_closed_form(&params.inner, parse_kind(kind)?).map_err(to_py)
}

#[pyfunction]
fn peak_location(params: PyRef<'_, PyModelParams>, kind: &str) -> PyResult<f64> {
    annealing::peak_location(&params.inner, parse_kind(kind)?).map_err(to_py)
}

#[pyfunction]
fn critical_point(params: PyRef<'_, PyModelParams>, kind: &str) -> PyResult<f64> {
    analysis::critical_point(&params.inner, parse_kind(kind)?).map_err(to_py)
}

#[pyfunction]
fn localization_profile(params: PyRef<'_, PyModelParams>, kind: &str, n_points: usize) -> PyResult<Vec<(f64, f64)>> {
    analysis::localization_profile(&params.inner, parse_kind(kind)?, n_points).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (gamma0, r, kind, n_values, variant="standard", at=None))]
fn gap_scaling(
    gamma0: f64,
    r: f64,
    kind: &str,
    n_values: Vec<usize>,
    variant: &str,
    at: Option<f64>,
) -> PyResult<PyGapScalingReport> {
    let kind = parse_kind(kind)?;
    let variant: Variant = variant.parse().map_err(to_py)?;
    let rep = match at {
        Some(s) => analysis::gap_scaling_at(gamma0, r, kind, &n_values, variant, s),
        None => analysis::gap_scaling(gamma0, r, kind, &n_values, variant),
    }
    .map_err(to_py)?;
    Ok(PyGapScalingReport {
        n_values: rep.n_values,
        min_gaps: rep.min_gaps,
        s_values: rep.s_values,
        fitted_exponent: rep.fitted_exponent,
        variant: rep.variant.as_str(),
    })
}

#[pymodule]
#[pyo3(name = "hole_anneal")]
fn hole_anneal_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModelParams>()?;
    m.add_class::<PySchedule>()?;
    m.add_class::<PyRunRecord>()?;
    m.add_class::<PyTauMin>()?;
    m.add_class::<PyAdiabaticFactor>()?;
    m.add_class::<PyGapScalingReport>()?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(gap, m)?)?;
    m.add_function(wrap_pyfunction!(coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(ground_hole_probability, m)?)?;
    m.add_function(wrap_pyfunction!(evolve_reduced, m)?)?;
    m.add_function(wrap_pyfunction!(evolve_full, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_check, m)?)?;
    m.add_function(wrap_pyfunction!(success_probability, m)?)?;
    m.add_function(wrap_pyfunction!(tau_min, m)?)?;
    m.add_function(wrap_pyfunction!(adiabatic_factor_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(adiabatic_factor_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(peak_location, m)?)?;
    m.add_function(wrap_pyfunction!(critical_point, m)?)?;
    m.add_function(wrap_pyfunction!(localization_profile, m)?)?;
    m.add_function(wrap_pyfunction!(gap_scaling, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
