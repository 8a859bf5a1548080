//! Python bindings. Frequencies cross the boundary in Hz, times in seconds,
//! angles in radians.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use softpulse::bloch_siegert;
use softpulse::design;
use softpulse::qec;
use softpulse::spin::{Spectator, TWO_PI};
use softpulse::SpinChainParams;

fn py_err(e: softpulse::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Three-spin chain parameters.
#[pyclass(name = "SpinChain", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PySpinChain {
    pub inner: SpinChainParams,
}

#[pymethods]
impl PySpinChain {
    #[new]
    #[pyo3(signature = (j12_hz, j23_hz, delta12_hz, delta13_hz, label = "custom"))]
    fn new(j12_hz: f64, j23_hz: f64, delta12_hz: f64, delta13_hz: f64, label: &str) -> PyResult<Self> {
        SpinChainParams::from_hz(j12_hz, j23_hz, delta12_hz, delta13_hz, label)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    #[staticmethod]
    fn alanine() -> Self {
        Self {
            inner: SpinChainParams::alanine(),
        }
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label.clone()
    }

    #[getter]
    fn j12_hz(&self) -> f64 {
        self.inner.j12 / TWO_PI
    }

    #[getter]
    fn j23_hz(&self) -> f64 {
        self.inner.j23 / TWO_PI
    }

    #[getter]
    fn delta12_hz(&self) -> f64 {
        self.inner.delta12 / TWO_PI
    }

    #[getter]
    fn delta13_hz(&self) -> f64 {
        self.inner.delta13 / TWO_PI
    }

    /// `π/J23` in seconds.
    fn gate_time(&self) -> f64 {
        self.inner.gate_time()
    }

    fn __repr__(&self) -> String {
        format!(
            "SpinChain(j12_hz={}, j23_hz={}, delta12_hz={}, delta13_hz={}, label={:?})",
            self.j12_hz(),
            self.j23_hz(),
            self.delta12_hz(),
            self.delta13_hz(),
            self.inner.label
        )
    }
}

#[pyclass(name = "SoftPulse", frozen, skip_from_py_object, get_all)]
#[derive(Clone)]
pub struct PySoftPulse {
    pub n: u32,
    pub omega_plus_hz: f64,
    pub omega_minus_hz: f64,
    pub tau_s: f64,
}

#[pyclass(name = "BsReport", frozen, skip_from_py_object, get_all)]
#[derive(Clone)]
pub struct PyBsReport {
    pub spectator: usize,
    pub epsilon: f64,
    pub approx_rad: f64,
    pub exact_rad: f64,
    pub rel_err: f64,
}

#[pyclass(name = "Optimum", frozen, skip_from_py_object, get_all)]
#[derive(Clone)]
pub struct PyOptimum {
    pub tau_tilde: f64,
    pub omega_tilde: f64,
    pub fidelity: f64,
    pub tau_s: f64,
    pub omega1_hz: f64,
}

#[pyclass(name = "RecoveryStats", frozen, skip_from_py_object, get_all)]
#[derive(Clone)]
pub struct PyRecoveryStats {
    pub trials: usize,
    pub min: f64,
    pub mean: f64,
}

/// Soft-pulse amplitude and length for angle `alpha`; `n` defaults to the smallest valid branch.
#[pyfunction]
#[pyo3(signature = (chain, alpha, n = None))]
pub fn solve_soft_pulse(chain: &PySpinChain, alpha: f64, n: Option<u32>) -> PyResult<PySoftPulse> {
    let p = &chain.inner;
    let n = match n {
        Some(n) => n,
        None => design::min_valid_n(alpha, p.j12, p.j23).map_err(py_err)?,
    };
    let s = design::soft_amplitude(alpha, p.j12, p.j23, n).map_err(py_err)?;
    Ok(PySoftPulse {
        n: s.n,
        omega_plus_hz: s.omega_plus / TWO_PI,
        omega_minus_hz: s.omega_minus / TWO_PI,
        tau_s: s.tau,
    })
}

/// `(ok, phase_rad, residual)` of the cancellation check.
#[pyfunction]
#[pyo3(signature = (chain, omega1_hz, alpha, tol = design::UNITARY_TOL))]
pub fn verify_cancellation(chain: &PySpinChain, omega1_hz: f64, alpha: f64, tol: f64) -> PyResult<(bool, f64, f64)> {
    let c = design::verify_cancellation(omega1_hz * TWO_PI, alpha, &chain.inner, tol).map_err(py_err)?;
    Ok((c.ok, c.phase, c.residual))
}

#[pyfunction]
pub fn bs_report(chain: &PySpinChain, omega1_hz: f64, tau_s: f64, spectator: usize) -> PyResult<PyBsReport> {
    let s = Spectator::from_index(spectator).map_err(py_err)?;
    let r = bloch_siegert::bs_report(&chain.inner, omega1_hz * TWO_PI, tau_s, s).map_err(py_err)?;
    Ok(PyBsReport {
        spectator: r.spectator,
        epsilon: r.epsilon,
        approx_rad: r.approx_phase,
        exact_rad: r.exact_phase,
        rel_err: r.relative_error,
    })
}

/// Refocusing fidelity against the common-frame entangler.
#[pyfunction]
pub fn fidelity_at(chain: &PySpinChain, tau_tilde: f64, omega_tilde: f64) -> PyResult<f64> {
    design::fidelity_at(tau_tilde, omega_tilde, &chain.inner).map_err(py_err)
}

/// 8×8 refocusing propagator as nested lists of complex numbers.
#[pyfunction]
pub fn refocusing_propagator(chain: &PySpinChain, tau_tilde: f64, omega_tilde: f64) -> PyResult<Vec<Vec<Complex64>>> {
    let u = design::refocusing_propagator_full(tau_tilde, omega_tilde, &chain.inner).map_err(py_err)?;
    Ok(u.as_slice().chunks(u.dim()).map(<[Complex64]>::to_vec).collect())
}

/// `(tau_tilde, omega_tilde, fidelity)` rows, tau_tilde outermost.
#[pyfunction]
pub fn landscape(chain: &PySpinChain, n_tau: usize, n_omega: usize) -> PyResult<Vec<(f64, f64, f64)>> {
    let grid = design::landscape_scan(&chain.inner, n_tau, n_omega).map_err(py_err)?;
    Ok(grid
        .samples
        .iter()
        .map(|s| (s.tau_tilde, s.omega_tilde, s.fidelity))
        .collect())
}

#[pyfunction]
pub fn optimize(chain: &PySpinChain) -> PyResult<PyOptimum> {
    let p = &chain.inner;
    let opt = design::optimize_fidelity(p).map_err(py_err)?;
    let (tau, omega1) = opt.physical(p);
    Ok(PyOptimum {
        tau_tilde: opt.tau_tilde,
        omega_tilde: opt.omega_tilde,
        fidelity: opt.fidelity,
        tau_s: tau,
        omega1_hz: omega1 / TWO_PI,
    })
}

/// `(index, holds, residual, phase_rad)` for each decoded error operator.
#[pyfunction]
#[pyo3(signature = (tol = 1e-9))]
pub fn qec_identities(tol: f64) -> Vec<(usize, bool, f64, f64)> {
    qec::operator_identity_check(tol)
        .into_iter()
        .map(|c| (c.index, c.holds, c.residual, c.phase))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (chain, probs = [0.25; 4], trials = 50, ideal = true, seed = qec::RECOVERY_SEED))]
pub fn qec_recovery(
    chain: &PySpinChain,
    probs: [f64; 4],
    trials: usize,
    ideal: bool,
    seed: u64,
) -> PyResult<PyRecoveryStats> {
    let ch = qec::CorrelatedChannel::new(probs).map_err(py_err)?;
    let s = qec::recovery_statistics(&chain.inner, &ch, trials, ideal, seed).map_err(py_err)?;
    Ok(PyRecoveryStats {
        trials: s.trials,
        min: s.min,
        mean: s.mean,
    })
}

#[pymodule]
fn softpulse_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpinChain>()?;
    m.add_class::<PySoftPulse>()?;
    m.add_class::<PyBsReport>()?;
    m.add_class::<PyOptimum>()?;
    m.add_class::<PyRecoveryStats>()?;
    m.add_function(wrap_pyfunction!(solve_soft_pulse, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cancellation, m)?)?;
    m.add_function(wrap_pyfunction!(bs_report, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity_at, m)?)?;
    m.add_function(wrap_pyfunction!(refocusing_propagator, m)?)?;
    m.add_function(wrap_pyfunction!(landscape, m)?)?;
    m.add_function(wrap_pyfunction!(optimize, m)?)?;
    m.add_function(wrap_pyfunction!(qec_identities, m)?)?;
    m.add_function(wrap_pyfunction!(qec_recovery, m)?)?;
    Ok(())
}
