//! Transient Bloch-Siegert shifts on spectator spins.
//!
//! A rectangular pulse of amplitude `ω1` on qubit 1 is seen by a spectator
//! detuned by `δ` as `H = δ·Iz + ω1·Ix`. Its rotation rate is `δ√(1+ε²)`
//! with `ε = ω1/δ`, so relative to bare detuning the spectator gains an
//! extra z-angle `(δ√(1+ε²) − δ)τ ≈ δε²τ/2 = ω1²τ/(2δ)`.
//! Signs follow `δ`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{expm_unitary, hermitian_eig, wrap_angle, StateVector};
use crate::pauli::{sigma, Axis};
use crate::spin::{Spectator, SpinChainParams};

/// Leading-order shift `ω1²τ/(2δ)` for a rectangular pulse of width `tau`.
pub fn bs_phase_rect(omega1: f64, delta: f64, tau: f64) -> Result<f64> {
    if delta == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    Ok(omega1 * omega1 * tau / (2.0 * delta))
}

/// Shift for a π-pulse of amplitude `omega1` (width `π/|ω1|`): `|ω1|π/(2δ)`.
pub fn bs_phase_pi_pulse(omega1: f64, delta: f64) -> Result<f64> {
    if delta == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    if omega1 == 0.0 {
        return Err(Error::ZeroAmplitude);
    }
    Ok(omega1.abs() * PI / (2.0 * delta))
}

/// Exact excess angle `(δ√(1+ε²) − δ)τ`.
pub fn exact_z_phase_excess(omega1: f64, delta: f64, tau: f64) -> Result<f64> {
    if delta == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    let eps2 = (omega1 / delta).powi(2);
    // √(1+x) − 1 = x/(√(1+x) + 1), stable for small x
    Ok(delta * eps2 / ((1.0 + eps2).sqrt() + 1.0) * tau)
}

/// Excess phase read off the simulated two-level propagator.
///
/// Takes the dressed eigenstate of `δIz + ω1Ix` that overlaps most with
/// `|0>`, evaluates its phase under `exp(−iHτ)`, and returns how far that
/// phase lags `−δτ/2`, wrapped into `(−π, π]`. Compare against half of
/// [`exact_z_phase_excess`].
pub fn simulated_z_phase_excess(omega1: f64, delta: f64, tau: f64) -> Result<f64> {
    if delta == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    let h = &sigma(Axis::Z).scale_real(delta / 2.0) + &sigma(Axis::X).scale_real(omega1 / 2.0);
    let u = expm_unitary(&h, tau)?;
    let eig = hermitian_eig(&h)?;
    let col = if eig.vectors[(0, 0)].norm() >= eig.vectors[(0, 1)].norm() {
        0
    } else {
        1
    };
    let dressed = StateVector::new(vec![eig.vectors[(0, col)], eig.vectors[(1, col)]])?;
    let overlap = dressed.expectation(&u);
    Ok(wrap_angle(-overlap.arg() - delta * tau / 2.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BsReport {
    pub spectator: usize,
    pub epsilon: f64,
    pub approx_phase: f64,
    pub exact_phase: f64,
    pub relative_error: f64,
}

/// Approximate and exact shift on one spectator for a pulse `(omega1, tau)` on qubit 1.
pub fn bs_report(p: &SpinChainParams, omega1: f64, tau: f64, spectator: Spectator) -> Result<BsReport> {
    let delta = p.detuning(spectator);
    let approx_phase = bs_phase_rect(omega1, delta, tau)?;
    let exact_phase = exact_z_phase_excess(omega1, delta, tau)?;
    let relative_error = if exact_phase != 0.0 {
        (approx_phase - exact_phase).abs() / exact_phase.abs()
    } else {
        0.0
    };
    Ok(BsReport {
        spectator: spectator.index(),
        epsilon: omega1 / delta,
        approx_phase,
        exact_phase,
        relative_error,
    })
}
