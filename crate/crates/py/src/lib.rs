//! Python bindings: the main operators and verification operations,
//! with matrices as nested lists of Python complex numbers.
//!
//! Library errors surface as ValueError with the library message.

use num_complex::Complex;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use bmw_verify::linalg::{CMatrix, StateVector};
use bmw_verify::spectral::{self, SpinLevel, SpectralParams};
use bmw_verify::ybe::AngleParams;
use bmw_verify::{bmw, suite, topo, ybe};

type Mat = Vec<Vec<Complex<f64>>>;
type Amps = Vec<Complex<f64>>;

fn to_mat(m: &CMatrix) -> Mat {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
        .collect()
}

fn to_vec(s: &StateVector) -> Amps {
    s.amplitudes().to_vec()
}

fn from_mat(rows: Mat) -> PyResult<CMatrix> {
    CMatrix::from_rows(rows).map_err(to_py_err)
}

fn to_py_err(e: bmw_verify::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn finite(name: &str, x: f64) -> PyResult<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(PyValueError::new_err(format!("{name} must be finite, got {x}")))
    }
}

fn angles(theta: f64, phi: f64) -> PyResult<AngleParams> {
    finite("theta", theta)?;
    finite("phi", phi)?;
    Ok(AngleParams { theta, phi })
}

fn level_from(m_s: Option<i8>) -> PyResult<SpinLevel> {
    match m_s {
        Some(m) => SpinLevel::triplet(m).map_err(to_py_err),
        None => Ok(SpinLevel::Singlet),
    }
}

/// One verified identity: name, Frobenius residual, tolerance, verdict.
#[pyclass(name = "RelationReport", skip_from_py_object)]
#[derive(Clone)]
struct PyRelationReport {
    #[pyo3(get)]
    name: String,
    #[pyo3(get)]
    residual: f64,
    #[pyo3(get)]
    tolerance: f64,
    #[pyo3(get)]
    passed: bool,
    #[pyo3(get)]
    dims: usize,
}

#[pymethods]
impl PyRelationReport {
    fn __repr__(&self) -> String {
        format!(
            "RelationReport(name={:?}, residual={:.3e}, tolerance={:.0e}, passed={}, dims={})",
            self.name, self.residual, self.tolerance, self.passed, self.dims
        )
    }
}

impl From<bmw_verify::RelationReport> for PyRelationReport {
    fn from(r: bmw_verify::RelationReport) -> Self {
        Self {
            name: r.name,
            residual: r.residual,
            tolerance: r.tolerance,
            passed: r.passed,
            dims: r.dims,
        }
    }
}

/// sigma, w, d and the braid eigenvalues.
#[pyfunction]
fn algebra_constants(py: Python<'_>) -> PyResult<Bound<'_, pyo3::types::PyDict>> {
    let c = bmw::AlgebraConstants::new();
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("sigma", c.sigma)?;
    dict.set_item("w", c.w)?;
    dict.set_item("d", c.d)?;
    dict.set_item("eigenvalues", c.braid_eigenvalues.to_vec())?;
    Ok(dict)
}

/// The 4x4 Temperley-Lieb matrix E(phi).
#[pyfunction]
fn e_matrix(phi: f64) -> PyResult<Mat> {
    Ok(to_mat(&bmw::generators(finite("phi", phi)?).map_err(to_py_err)?.e))
}

/// The 4x4 braid matrix B(phi).
#[pyfunction]
fn b_matrix(phi: f64) -> PyResult<Mat> {
    Ok(to_mat(&bmw::generators(finite("phi", phi)?).map_err(to_py_err)?.b))
}

/// The cup state |psi_d(phi)> as four amplitudes.
#[pyfunction]
fn psi_d(phi: f64) -> PyResult<Amps> {
    Ok(to_vec(&bmw::psi_d(finite("phi", phi)?)))
}

/// Check the defining relations on an n-site chain.
#[pyfunction]
#[pyo3(signature = (n, phi, tol = 1e-12))]
fn verify_bmw_relations(n: usize, phi: f64, tol: f64) -> PyResult<Vec<PyRelationReport>> {
    Ok(bmw::verify_bmw_relations(n, phi, tol)
        .map_err(to_py_err)?
        .into_iter()
        .map(Into::into)
        .collect())
}

/// Minimal-polynomial, trace and degeneracy-rank checks of B.
#[pyfunction]
#[pyo3(signature = (phi, tol = 1e-12))]
fn verify_braid_spectrum(phi: f64, tol: f64) -> PyResult<Vec<PyRelationReport>> {
    Ok(bmw::verify_braid_spectrum(phi, tol)
        .map_err(to_py_err)?
        .into_iter()
        .map(Into::into)
        .collect())
}

/// The Yang-Baxter solution R(theta, phi) as a 4x4 matrix.
#[pyfunction]
fn r_matrix(theta: f64, phi: f64) -> PyResult<Mat> {
    Ok(to_mat(&ybe::r_matrix(angles(theta, phi)?)))
}

/// Taylor-exponential route exp(theta X).
#[pyfunction]
#[pyo3(signature = (theta, phi, terms = 30))]
fn r_from_exponential(theta: f64, phi: f64, terms: usize) -> PyResult<Mat> {
    Ok(to_mat(
        &ybe::r_from_exponential(angles(theta, phi)?, terms).map_err(to_py_err)?,
    ))
}

/// Lorentz composition of spectral parameters; raises on the tan pole.
#[pyfunction]
fn velocity_add(theta1: f64, theta3: f64) -> PyResult<f64> {
    ybe::velocity_add(theta1, theta3).map_err(to_py_err)
}

/// Verify the YBE at (theta1, theta3, phi) with theta2 from velocity_add.
#[pyfunction]
#[pyo3(signature = (theta1, theta3, phi, tol = 1e-12))]
fn check_ybe(theta1: f64, theta3: f64, phi: f64, tol: f64) -> PyResult<PyRelationReport> {
    Ok(ybe::check_ybe(theta1, theta3, phi, tol)
        .map_err(to_py_err)?
        .into())
}

/// The four entangled states R|kl> as amplitude lists.
#[pyfunction]
fn entangled_basis(theta: f64, phi: f64) -> PyResult<Vec<Amps>> {
    Ok(ybe::entangled_basis(angles(theta, phi)?)
        .states
        .iter()
        .map(to_vec)
        .collect())
}

/// Concurrence 2|ad - bc| of a normalized two-qubit state.
#[pyfunction]
fn concurrence(amplitudes: Amps) -> PyResult<f64> {
    let s = StateVector::from_amplitudes(2, amplitudes).map_err(to_py_err)?;
    ybe::concurrence(&s).map_err(to_py_err)
}

/// H = i hbar omega (dR/dphi) R^dag as a 4x4 matrix.
#[pyfunction]
#[pyo3(signature = (theta, phi, omega = 1.0, hbar = 1.0))]
fn hamiltonian(theta: f64, phi: f64, omega: f64, hbar: f64) -> PyResult<Mat> {
    finite("omega", omega)?;
    finite("hbar", hbar)?;
    Ok(to_mat(&spectral::hamiltonian(angles(theta, phi)?, omega, hbar)))
}

/// The NMR form 2 hbar omega cos(vt) n.S.
#[pyfunction]
#[pyo3(signature = (vartheta, phi, omega = 1.0, hbar = 1.0))]
fn nmr_form(vartheta: f64, phi: f64, omega: f64, hbar: f64) -> PyResult<Mat> {
    let sp = SpectralParams::with_scales(vartheta, phi, omega, hbar).map_err(to_py_err)?;
    Ok(to_mat(&spectral::nmr_form(&sp)))
}

/// Closed-form eigensystem: (energies, states), ordered
/// (1,+1), (1,0), (1,-1), (0,0).
#[pyfunction]
fn eigensystem(vartheta: f64, phi: f64) -> PyResult<(Vec<f64>, Vec<Amps>)> {
    let sp = SpectralParams::new(vartheta, phi).map_err(to_py_err)?;
    let es = spectral::eigensystem(&sp).map_err(to_py_err)?;
    Ok((
        es.energies.to_vec(),
        es.states.iter().map(to_vec).collect(),
    ))
}

/// gamma = -m_s * 2pi(1 - cos vt); m_s = None means the singlet.
#[pyfunction]
#[pyo3(signature = (vartheta, m_s))]
fn berry_phase_analytic(vartheta: f64, m_s: Option<i8>) -> PyResult<f64> {
    Ok(spectral::berry_phase_analytic(vartheta, level_from(m_s)?))
}

/// Discrete overlap-product Berry phase; returns a dict with numeric and
/// analytic values and the solid angle.
#[pyfunction]
#[pyo3(signature = (vartheta, m_s, steps = 20000))]
fn berry_phase_numeric(
    py: Python<'_>,
    vartheta: f64,
    m_s: Option<i8>,
    steps: usize,
) -> PyResult<Bound<'_, pyo3::types::PyDict>> {
    let r = spectral::berry_phase_numeric(vartheta, level_from(m_s)?, steps).map_err(to_py_err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("gamma_numeric", r.gamma_numeric)?;
    dict.set_item("gamma_analytic", r.gamma_analytic)?;
    dict.set_item("solid_angle", r.solid_angle)?;
    dict.set_item("steps", r.steps)?;
    Ok(dict)
}

/// The three graphic states as 16-amplitude lists.
#[pyfunction]
fn graphic_states(phi: f64) -> PyResult<Vec<Amps>> {
    let g = topo::graphic_states(finite("phi", phi)?);
    Ok(vec![to_vec(&g.g1), to_vec(&g.g2), to_vec(&g.g3)])
}

/// The orthonormal topological basis: (states, gram_residual).
#[pyfunction]
fn topo_basis(phi: f64) -> PyResult<(Vec<Amps>, f64)> {
    let b = topo::topo_basis(finite("phi", phi)?);
    Ok((
        vec![to_vec(&b.e1), to_vec(&b.e2), to_vec(&b.e3)],
        b.gram_residual,
    ))
}

/// The reduced 3x3 generator sextet as a dict of matrices.
#[pyfunction]
fn reduced_generators(py: Python<'_>, phi: f64) -> PyResult<Bound<'_, pyo3::types::PyDict>> {
    let set = topo::reduced_generators(phi).map_err(to_py_err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("a", to_mat(&set.a))?;
    dict.set_item("b", to_mat(&set.b))?;
    dict.set_item("e_a", to_mat(&set.e_a))?;
    dict.set_item("e_b", to_mat(&set.e_b))?;
    dict.set_item("b_prime", to_mat(&set.b_prime))?;
    dict.set_item("e_b_prime", to_mat(&set.e_b_prime))?;
    Ok(dict)
}

/// A(theta) = diag(e^{i theta}, 1, e^{-i theta}).
#[pyfunction]
fn script_a(theta: f64) -> PyResult<Mat> {
    Ok(to_mat(&topo::script_a(finite("theta", theta)?)))
}

/// B(theta, phi) = exp(theta X_T) in explicit form.
#[pyfunction]
fn script_b(theta: f64, phi: f64) -> PyResult<Mat> {
    angles(theta, phi)?;
    Ok(to_mat(&topo::script_b(theta, phi)))
}

/// Standard spin-1 small-d rotation matrix.
#[pyfunction]
fn wigner_d1(theta: f64) -> PyResult<Mat> {
    Ok(to_mat(&topo::wigner_d1(finite("theta", theta)?)))
}

/// Verify the reduced YBE at (theta1, theta3, phi).
#[pyfunction]
#[pyo3(signature = (theta1, theta3, phi, tol = 1e-12))]
fn check_reduced_ybe(theta1: f64, theta3: f64, phi: f64, tol: f64) -> PyResult<PyRelationReport> {
    Ok(topo::check_reduced_ybe(theta1, theta3, phi, tol)
        .map_err(to_py_err)?
        .into())
}

/// H_T = i hbar omega (dB/dphi) B^dag on the topological space.
#[pyfunction]
#[pyo3(signature = (theta, phi, omega = 1.0, hbar = 1.0))]
fn reduced_hamiltonian(theta: f64, phi: f64, omega: f64, hbar: f64) -> PyResult<Mat> {
    angles(theta, phi)?;
    finite("omega", omega)?;
    finite("hbar", hbar)?;
    Ok(to_mat(&topo::reduced_hamiltonian(theta, phi, omega, hbar)))
}

/// Kronecker product of two matrices.
#[pyfunction]
fn kron(a: Mat, b: Mat) -> PyResult<Mat> {
    Ok(to_mat(&from_mat(a)?.kron(&from_mat(b)?)))
}

/// Frobenius distance between two same-shaped matrices.
#[pyfunction]
fn frobenius_distance(a: Mat, b: Mat) -> PyResult<f64> {
    from_mat(a)?.frobenius_distance(&from_mat(b)?).map_err(to_py_err)
}

/// One full verification pass (algebra, YBE, topo suites), as reports.
#[pyfunction]
#[pyo3(signature = (tol = 1e-12, seed = 42))]
fn run_all_suites(tol: f64, seed: u64) -> PyResult<Vec<PyRelationReport>> {
    let mut reports = Vec::new();
    let suites = [
        suite::algebra_suite(3, suite::PhiSpec::Random(10), tol, seed).map_err(to_py_err)?,
        suite::ybe_suite(None, Some(25), tol, seed).map_err(to_py_err)?,
        suite::topo_suite(suite::PhiSpec::Random(5), tol, seed).map_err(to_py_err)?,
    ];
    for s in suites {
        reports.extend(s.reports.into_iter().map(PyRelationReport::from));
    }
    Ok(reports)
}

#[pymodule]
fn bmw_verify_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyRelationReport>()?;
    m.add_function(wrap_pyfunction!(algebra_constants, m)?)?;
    m.add_function(wrap_pyfunction!(e_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(b_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(psi_d, m)?)?;
    m.add_function(wrap_pyfunction!(verify_bmw_relations, m)?)?;
    m.add_function(wrap_pyfunction!(verify_braid_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(r_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(r_from_exponential, m)?)?;
    m.add_function(wrap_pyfunction!(velocity_add, m)?)?;
    m.add_function(wrap_pyfunction!(check_ybe, m)?)?;
    m.add_function(wrap_pyfunction!(entangled_basis, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(nmr_form, m)?)?;
    m.add_function(wrap_pyfunction!(eigensystem, m)?)?;
    m.add_function(wrap_pyfunction!(berry_phase_analytic, m)?)?;
    m.add_function(wrap_pyfunction!(berry_phase_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(graphic_states, m)?)?;
    m.add_function(wrap_pyfunction!(topo_basis, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_generators, m)?)?;
    m.add_function(wrap_pyfunction!(script_a, m)?)?;
    m.add_function(wrap_pyfunction!(script_b, m)?)?;
    m.add_function(wrap_pyfunction!(wigner_d1, m)?)?;
    m.add_function(wrap_pyfunction!(check_reduced_ybe, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(kron, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_distance, m)?)?;
    m.add_function(wrap_pyfunction!(run_all_suites, m)?)?;
    Ok(())
}
