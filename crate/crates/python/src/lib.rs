//! Python bindings. Build with `maturin develop` from this directory.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tangleroof::curve::roof_curve as core_roof_curve;
use tangleroof::oracle::{
    roof_upper_bound as core_upper_bound, verify_family as core_verify, OracleOptions,
    RankTwoState, VerifyOptions, DEFAULT_RESTARTS, DEFAULT_SEED,
};
use tangleroof::roof::thresholds as core_thresholds;

create_exception!(tangleroof, TangleError, PyValueError);

fn err(e: tangleroof::TangleError) -> PyErr {
    TangleError::new_err(e.to_string())
}

/// Normalized three-qubit pure state, amplitudes in order |000>..|111>.
#[pyclass(name = "PureState", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyPureState {
    inner: tangleroof::PureState3Q,
}

#[pymethods]
impl PyPureState {
    #[new]
    fn new(amplitudes: Vec<Complex64>) -> PyResult<Self> {
        tangleroof::PureState3Q::from_slice(&amplitudes)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        tangleroof::PureState3Q::from_json(text)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().to_vec()
    }

    fn tangle(&self) -> f64 {
        tangleroof::three_tangle(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("PureState({:?})", self.inner.amplitudes())
    }
}

/// GHZ/W family a|000> + b|111> and c|001> + d|010> + f|100>.
#[pyclass(name = "FamilyParams", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyFamilyParams {
    inner: tangleroof::FamilyParams,
}

#[pymethods]
impl PyFamilyParams {
    #[new]
    fn new(a: f64, b: f64, c: f64, d: f64, f: f64) -> PyResult<Self> {
        tangleroof::FamilyParams::new(a, b, c, d, f)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn symmetric() -> Self {
        Self {
            inner: tangleroof::FamilyParams::symmetric(),
        }
    }

    #[staticmethod]
    fn from_s(s: f64, tau_ghz: f64) -> PyResult<Self> {
        solve_coefficients(s, tau_ghz)
    }

    #[getter]
    fn coefficients(&self) -> (f64, f64, f64, f64, f64) {
        let f = &self.inner;
        (f.a(), f.b(), f.c(), f.d(), f.f())
    }

    /// `None` when a b = 0.
    #[getter]
    fn s(&self) -> Option<f64> {
        self.inner.s()
    }

    #[getter]
    fn tau_ghz(&self) -> f64 {
        self.inner.tau_ghz()
    }

    fn ghz_state(&self) -> PyPureState {
        PyPureState {
            inner: self.inner.ghz_state(),
        }
    }

    fn w_state(&self) -> PyPureState {
        PyPureState {
            inner: self.inner.w_state(),
        }
    }

    fn superposition_state(&self, p: f64, phi: f64) -> PyResult<PyPureState> {
        self.inner
            .superposition_state(p, phi)
            .map(|inner| PyPureState { inner })
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        let (a, b, c, d, f) = self.coefficients();
        format!("FamilyParams(a={a}, b={b}, c={c}, d={d}, f={f})")
    }
}

#[pyfunction]
fn three_tangle(state: &PyPureState) -> f64 {
    tangleroof::three_tangle(&state.inner)
}

#[pyfunction]
fn char_tangle(family: &PyFamilyParams, p: f64, phi: f64) -> PyResult<f64> {
    family.inner.char_tangle(p, phi).map_err(err)
}

#[pyfunction]
fn roof_value(family: &PyFamilyParams, p: f64) -> PyResult<f64> {
    tangleroof::roof_value(&family.inner, p).map_err(err)
}

#[pyfunction]
fn p_zero(s: f64) -> PyResult<f64> {
    tangleroof::p_zero(s).map_err(err)
}

#[pyfunction]
fn p_one(s: f64) -> PyResult<f64> {
    tangleroof::p_one(s).map_err(err)
}

#[pyfunction]
fn p_one_unconstrained(s: f64) -> PyResult<f64> {
    tangleroof::p_one_unconstrained(s).map_err(err)
}

/// `(p0, p1)` of a family.
#[pyfunction]
fn thresholds(family: &PyFamilyParams) -> (f64, f64) {
    let th = core_thresholds(&family.inner);
    (th.p0, th.p1)
}

#[pyfunction]
fn solve_coefficients(s: f64, tau_ghz: f64) -> PyResult<PyFamilyParams> {
    tangleroof::solve_coefficients(s, tau_ghz)
        .map(|inner| PyFamilyParams { inner })
        .map_err(err)
}

fn members_list(dec: &tangleroof::Decomposition) -> Vec<(f64, PyPureState)> {
    dec.members()
        .iter()
        .map(|m| (m.weight, PyPureState { inner: m.state }))
        .collect()
}

/// Dict with `region`, `degenerate`, `members` [(weight, PureState)],
/// `average_tangle` and `residual`.
#[pyfunction]
fn optimal_decomposition<'py>(
    py: Python<'py>,
    family: &PyFamilyParams,
    p: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let opt = tangleroof::optimal_decomposition(&family.inner, p).map_err(err)?;
    let rho = tangleroof::family_density(&family.inner, p).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("region", opt.region.label())?;
    out.set_item("degenerate", opt.degenerate)?;
    out.set_item("members", members_list(&opt.decomposition))?;
    out.set_item("average_tangle", opt.decomposition.average_tangle())?;
    out.set_item("residual", opt.decomposition.residual(&rho))?;
    Ok(out)
}

fn oracle_options(sizes: Option<Vec<usize>>, restarts: usize, seed: u64) -> OracleOptions {
    let mut opts = OracleOptions {
        restarts,
        seed,
        ..Default::default()
    };
    if let Some(sizes) = sizes {
        opts.sizes = sizes;
    }
    opts
}

/// Numerical upper bound on the mixed-state tangle of rho(p) of a family.
#[pyfunction]
#[pyo3(signature = (family, p, sizes=None, restarts=DEFAULT_RESTARTS, seed=DEFAULT_SEED))]
fn roof_upper_bound<'py>(
    py: Python<'py>,
    family: &PyFamilyParams,
    p: f64,
    sizes: Option<Vec<usize>>,
    restarts: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let rho = RankTwoState::family(&family.inner, p).map_err(err)?;
    let opts = oracle_options(sizes, restarts, seed);
    let res = py
        .detach(|| core_upper_bound(&rho, &opts))
        .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("value", res.value)?;
    out.set_item("size", res.size)?;
    out.set_item("members", members_list(&res.decomposition))?;
    out.set_item("evaluations", res.evaluations)?;
    Ok(out)
}

/// List of per-point dicts comparing closed form and oracle.
#[pyfunction]
#[pyo3(signature = (family, p_grid=21, sizes=None, restarts=DEFAULT_RESTARTS, seed=DEFAULT_SEED, tol=1e-3))]
fn verify_family<'py>(
    py: Python<'py>,
    family: &PyFamilyParams,
    p_grid: usize,
    sizes: Option<Vec<usize>>,
    restarts: usize,
    seed: u64,
    tol: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let opts = VerifyOptions {
        p_grid,
        tol_gap: tol,
        oracle: oracle_options(sizes, restarts, seed),
        ..Default::default()
    };
    let reports = py
        .detach(|| core_verify(&family.inner, &opts))
        .map_err(err)?;
    reports
        .iter()
        .map(|r| {
            let row = PyDict::new(py);
            row.set_item("p", r.p)?;
            row.set_item("region", r.region.label())?;
            row.set_item("analytic", r.analytic)?;
            row.set_item("oracle", r.oracle)?;
            row.set_item("char_min", r.char_min)?;
            row.set_item("gap", r.gap)?;
            row.set_item("flag", r.flag.label())?;
            Ok(row)
        })
        .collect()
}

/// Rows `(p, region, tau_roof, tau_char_min, t_signed)`.
#[pyfunction]
#[pyo3(signature = (family, grid=1001, phi_grid=720))]
fn roof_curve(
    family: &PyFamilyParams,
    grid: usize,
    phi_grid: usize,
) -> PyResult<Vec<(f64, &'static str, f64, f64, f64)>> {
    let rows = core_roof_curve(&family.inner, grid, phi_grid).map_err(err)?;
    Ok(rows
        .iter()
        .map(|r| (r.p, r.region.label(), r.tau_roof, r.tau_char_min, r.t_signed))
        .collect())
}

#[pymodule]
#[pyo3(name = "tangleroof")]
fn py_tangleroof(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TangleError", m.py().get_type::<TangleError>())?;
    m.add_class::<PyPureState>()?;
    m.add_class::<PyFamilyParams>()?;
    m.add_function(wrap_pyfunction!(three_tangle, m)?)?;
    m.add_function(wrap_pyfunction!(char_tangle, m)?)?;
    m.add_function(wrap_pyfunction!(roof_value, m)?)?;
    m.add_function(wrap_pyfunction!(p_zero, m)?)?;
    m.add_function(wrap_pyfunction!(p_one, m)?)?;
    m.add_function(wrap_pyfunction!(p_one_unconstrained, m)?)?;
    m.add_function(wrap_pyfunction!(thresholds, m)?)?;
    m.add_function(wrap_pyfunction!(solve_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(roof_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family, m)?)?;
    m.add_function(wrap_pyfunction!(roof_curve, m)?)?;
    Ok(())
}
