//! Python bindings for the enclosure engine, the oracle and the lemma checks.

use certzero::bessel_oracle::{self, PrecisionPolicy};
use certzero::lemma_lab::{constants, scans};
use certzero::{expansion, liouville, zero_engine, Dd, Error};
use pyo3::exceptions::{PyNotImplementedError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Unsupported(_) => PyNotImplementedError::new_err(e.to_string()),
        Error::Convergence { .. } | Error::BracketNotFound { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn policy(name: &str) -> PyResult<PrecisionPolicy> {
    name.parse().map_err(py_err)
}

#[pyclass(name = "ZeroEnclosure", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyZeroEnclosure {
    #[pyo3(get)]
    nu: f64,
    #[pyo3(get)]
    m: u64,
    #[pyo3(get)]
    point: f64,
    #[pyo3(get)]
    lower: f64,
    #[pyo3(get)]
    upper: f64,
    #[pyo3(get)]
    width: f64,
    #[pyo3(get)]
    chi: f64,
    inner: zero_engine::ZeroEnclosure,
}

#[pymethods]
impl PyZeroEnclosure {
    /// Strict containment, evaluated in double-double.
    fn contains(&self, j: f64) -> bool {
        self.inner.contains(Dd::from_f64(j))
    }

    fn __repr__(&self) -> String {
        format!("ZeroEnclosure(nu={}, m={}, lower={:.17e}, upper={:.17e})", self.nu, self.m, self.lower, self.upper)
    }
}

impl From<zero_engine::ZeroEnclosure> for PyZeroEnclosure {
    fn from(e: zero_engine::ZeroEnclosure) -> Self {
        PyZeroEnclosure {
            nu: e.nu,
            m: e.m,
            point: e.point.to_f64(),
            lower: e.lower().to_f64(),
            upper: e.upper().to_f64(),
            width: e.width(),
            chi: e.chi,
            inner: e,
        }
    }
}

#[pyclass(name = "CertifiedZero", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyCertifiedZero {
    m: u64,
    root: f64,
    lower: f64,
    upper: f64,
    residual: f64,
}

#[pymethods]
impl PyCertifiedZero {
    fn __repr__(&self) -> String {
        format!("CertifiedZero(m={}, root={:.17e})", self.m, self.root)
    }
}

impl From<bessel_oracle::CertifiedZero> for PyCertifiedZero {
    fn from(z: bessel_oracle::CertifiedZero) -> Self {
        PyCertifiedZero {
            m: z.m,
            root: z.root.to_f64(),
            lower: z.lower.to_f64(),
            upper: z.upper.to_f64(),
            residual: z.residual,
        }
    }
}

#[pyclass(name = "Verification", frozen, get_all)]
struct PyVerification {
    enclosure: PyZeroEnclosure,
    oracle: PyCertifiedZero,
    margin: f64,
    normalized_error: f64,
    window: (f64, f64),
    zhat_error: f64,
    contained: bool,
    in_window: bool,
    zhat_in_window: bool,
    passed: bool,
}

#[pyclass(name = "ScanReport", frozen, get_all)]
struct PyScanReport {
    scan_id: String,
    grid: Vec<f64>,
    values: Vec<f64>,
    min: f64,
    max: f64,
    argmin: f64,
    argmax: f64,
    all_positive: bool,
    limit: f64,
    increasing: bool,
    decreasing: bool,
}

#[pyclass(name = "ConstantRow", frozen, get_all)]
struct PyConstantRow {
    name: String,
    computed: f64,
    reference: f64,
    abs_diff: f64,
    tolerance: f64,
    passed: bool,
}

#[pymethods]
impl PyConstantRow {
    fn __repr__(&self) -> String {
        format!("ConstantRow(name={:?}, computed={:.12}, passed={})", self.name, self.computed, self.passed)
    }
}

#[pyfunction]
fn zeta_of_z(z: f64) -> PyResult<f64> {
    liouville::zeta_of_z(z).map_err(py_err)
}

#[pyfunction]
fn sigma_of_z(z: f64) -> PyResult<f64> {
    liouville::sigma_of_z(z).map_err(py_err)
}

#[pyfunction]
fn z_of_zeta(zeta: f64) -> PyResult<f64> {
    liouville::z_of_zeta(zeta).map_err(py_err)
}

#[pyfunction]
fn zhat(j: u32, z: f64) -> PyResult<f64> {
    expansion::zhat(j, z).map_err(py_err)
}

#[pyfunction]
fn upsilon(j: u32, z: f64) -> PyResult<f64> {
    expansion::upsilon(j, z).map_err(py_err)
}

#[pyfunction]
fn eta(nu: f64, z: f64) -> PyResult<f64> {
    expansion::eta(nu, z).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (nu, x, policy = "extended"))]
fn bessel_j(nu: f64, x: f64, policy: &str) -> PyResult<f64> {
    bessel_oracle::bessel_j(nu, x, self::policy(policy)?).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (nu, m, policy = "extended"))]
fn reference_zero(py: Python<'_>, nu: f64, m: u64, policy: &str) -> PyResult<PyCertifiedZero> {
    let policy = self::policy(policy)?;
    let z = py.detach(|| bessel_oracle::reference_zero_certified(nu, m, policy)).map_err(py_err)?;
    Ok(z.into())
}

#[pyfunction]
fn enclosure(nu: f64, m: u64) -> PyResult<PyZeroEnclosure> {
    Ok(zero_engine::enclosure(nu, m).map_err(py_err)?.into())
}

#[pyfunction]
#[pyo3(signature = (nu, m, policy = "extended"))]
fn verify_zero(py: Python<'_>, nu: f64, m: u64, policy: &str) -> PyResult<PyVerification> {
    let policy = self::policy(policy)?;
    let v = py.detach(|| zero_engine::verify_zero(nu, m, policy)).map_err(py_err)?;
    Ok(PyVerification {
        enclosure: v.enclosure.into(),
        oracle: v.oracle.into(),
        margin: v.margin,
        normalized_error: v.normalized_error,
        window: v.window,
        zhat_error: v.zhat_error,
        contained: v.contained,
        in_window: v.in_window,
        zhat_in_window: v.zhat_in_window,
        passed: v.pass(),
    })
}

#[pyfunction]
fn constant_table(py: Python<'_>) -> PyResult<Vec<PyConstantRow>> {
    let rows = py.detach(constants::constant_table).map_err(py_err)?;
    Ok(rows
        .iter()
        .map(|r| PyConstantRow {
            name: r.name.to_string(),
            computed: r.computed,
            reference: r.reference,
            abs_diff: r.abs_diff(),
            tolerance: r.tolerance,
            passed: r.pass(),
        })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (scan_id, samples = scans::MIN_SAMPLES * 10))]
fn scan(py: Python<'_>, scan_id: &str, samples: usize) -> PyResult<PyScanReport> {
    let id: scans::ScanId = scan_id.parse().map_err(py_err)?;
    let r = py.detach(|| scans::scan(id, samples)).map_err(py_err)?;
    Ok(PyScanReport {
        scan_id: r.scan_id.to_string(),
        grid: r.grid,
        values: r.values,
        min: r.min,
        max: r.max,
        argmin: r.argmin,
        argmax: r.argmax,
        all_positive: r.all_positive,
        limit: r.limit,
        increasing: r.increasing,
        decreasing: r.decreasing,
    })
}

#[pymodule]
fn certzero_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyZeroEnclosure>()?;
    m.add_class::<PyCertifiedZero>()?;
    m.add_class::<PyVerification>()?;
    m.add_class::<PyScanReport>()?;
    m.add_class::<PyConstantRow>()?;
    m.add_function(wrap_pyfunction!(zeta_of_z, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_of_z, m)?)?;
    m.add_function(wrap_pyfunction!(z_of_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(zhat, m)?)?;
    m.add_function(wrap_pyfunction!(upsilon, m)?)?;
    m.add_function(wrap_pyfunction!(eta, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(reference_zero, m)?)?;
    m.add_function(wrap_pyfunction!(enclosure, m)?)?;
    m.add_function(wrap_pyfunction!(verify_zero, m)?)?;
    m.add_function(wrap_pyfunction!(constant_table, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    Ok(())
}
