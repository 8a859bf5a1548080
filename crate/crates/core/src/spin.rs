//! Three-spin chain parameters, rotating-frame Hamiltonians and target gates.
//!
//! All frequencies are angular (rad/s). Detunings keep their sign:
//! `delta12 = ω01 − ω02` and `delta13 = ω01 − ω03`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::pauli::{spin3, zz3, Axis};

pub const TWO_PI: f64 = 2.0 * PI;

/// Couplings and detunings of a linear chain 1–2–3 (J13 = 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinChainParams {
    pub j12: f64,
    pub j23: f64,
    pub delta12: f64,
    pub delta13: f64,
    pub label: String,
}

impl SpinChainParams {
    pub fn new(j12: f64, j23: f64, delta12: f64, delta13: f64, label: impl Into<String>) -> Result<Self> {
        for (name, v) in [("j12", j12), ("j23", j23), ("delta12", delta12), ("delta13", delta13)] {
            if !v.is_finite() {
                return Err(Error::BadParameter(format!("{name} must be finite")));
            }
        }
        if j12 <= 0.0 || j23 <= 0.0 {
            return Err(Error::BadParameter("couplings j12 and j23 must be positive".into()));
        }
        Ok(Self {
            j12,
            j23,
            delta12,
            delta13,
            label: label.into(),
        })
    }

    /// Builds parameters from cyclic frequencies in Hz.
    pub fn from_hz(j12_hz: f64, j23_hz: f64, delta12_hz: f64, delta13_hz: f64, label: impl Into<String>) -> Result<Self> {
        Self::new(
            j12_hz * TWO_PI,
            j23_hz * TWO_PI,
            delta12_hz * TWO_PI,
            delta13_hz * TWO_PI,
            label,
        )
    }

    /// ¹³C-labelled L-alanine in D₂O at a 500 MHz proton frequency.
    pub fn alanine() -> Self {
        Self::from_hz(34.8, 53.8, -4320.0, -20100.0, "L-alanine").expect("valid constants")
    }

    /// Detuning of a spectator qubit (2 or 3) from the qubit-1 carrier.
    pub fn detuning(&self, spectator: Spectator) -> f64 {
        match spectator {
            Spectator::Two => self.delta12,
            Spectator::Three => self.delta13,
        }
    }

    /// Duration of the ideal two-qubit gate `U23(π)`.
    pub fn gate_time(&self) -> f64 {
        PI / self.j23
    }

    /// Larmor offsets of the three qubits relative to qubit 1, `ω0k − ω01`.
    fn larmor_offsets(&self) -> [f64; 3] {
        [0.0, -self.delta12, -self.delta13]
    }

    /// Z-term coefficients of each qubit in the frame rotating with `carrier`'s
    /// Larmor frequency. For carrier 1 this is `(0, δ12, δ13)`.
    pub fn frame_offsets(&self, carrier: Qubit) -> [f64; 3] {
        let l = self.larmor_offsets();
        let c = l[carrier.index() - 1];
        [c - l[0], c - l[1], c - l[2]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Spectator {
    Two,
    Three,
}

impl Spectator {
    pub fn from_index(k: usize) -> Result<Self> {
        match k {
            2 => Ok(Spectator::Two),
            3 => Ok(Spectator::Three),
            _ => Err(Error::BadIndex { index: k, count: 3 }),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Spectator::Two => 2,
            Spectator::Three => 3,
        }
    }
}

/// One of the three chain qubits, used to pick which spin an rf pulse drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Qubit {
    #[default]
    One,
    Two,
    Three,
}

impl Qubit {
    pub fn index(self) -> usize {
        match self {
            Qubit::One => 1,
            Qubit::Two => 2,
            Qubit::Three => 3,
        }
    }

    pub fn from_index(k: usize) -> Result<Self> {
        match k {
            1 => Ok(Qubit::One),
            2 => Ok(Qubit::Two),
            3 => Ok(Qubit::Three),
            _ => Err(Error::BadIndex { index: k, count: 3 }),
        }
    }
}

fn rf_term(qubit: usize, omega1: f64, phase: f64) -> ComplexMatrix {
    &spin3(Axis::X, qubit).scale_real(omega1 * phase.cos())
        + &spin3(Axis::Y, qubit).scale_real(omega1 * phase.sin())
}

fn coupling_terms(p: &SpinChainParams) -> ComplexMatrix {
    &zz3(1, 2).scale_real(p.j12) + &zz3(2, 3).scale_real(p.j23)
}

/// `ω1·Ix⁽¹⁾ + J12·Iz⁽¹⁾Iz⁽²⁾ + J23·Iz⁽²⁾Iz⁽³⁾`: rf on qubit 1 only, no crosstalk.
pub fn reduced_hamiltonian(p: &SpinChainParams, omega1: f64) -> ComplexMatrix {
    reduced_hamiltonian_driven(p, Qubit::One, omega1, 0.0)
}

/// Reduced model with the rf drive on an arbitrary qubit and pulse phase.
pub fn reduced_hamiltonian_driven(p: &SpinChainParams, driven: Qubit, omega1: f64, phase: f64) -> ComplexMatrix {
    &rf_term(driven.index(), omega1, phase) + &coupling_terms(p)
}

/// Common-frame Hamiltonian with the rf field acting on all three spins.
///
/// `ω1 Σ_k (cosφ Ix⁽ᵏ⁾ + sinφ Iy⁽ᵏ⁾) + δ12 Iz⁽²⁾ + δ13 Iz⁽³⁾ + J12 Iz⁽¹⁾Iz⁽²⁾ + J23 Iz⁽²⁾Iz⁽³⁾`
pub fn full_hamiltonian(p: &SpinChainParams, omega1: f64, phase: f64) -> ComplexMatrix {
    full_hamiltonian_driven(p, Qubit::One, omega1, phase)
}

/// Full model in the frame rotating with `carrier`'s Larmor frequency, rf on resonance with it.
pub fn full_hamiltonian_driven(p: &SpinChainParams, carrier: Qubit, omega1: f64, phase: f64) -> ComplexMatrix {
    let offsets = p.frame_offsets(carrier);
    let mut h = coupling_terms(p);
    for k in 1..=3 {
        if omega1 != 0.0 {
            h = &h + &rf_term(k, omega1, phase);
        }
        if offsets[k - 1] != 0.0 {
            h = &h + &spin3(Axis::Z, k).scale_real(offsets[k - 1]);
        }
    }
    h
}

/// Eigenvalue `m_j m_k` of `Iz⁽ʲ⁾Iz⁽ᵏ⁾` on basis state `idx`.
fn zz_eigen(idx: usize, j: usize, k: usize) -> f64 {
    z_eigen(idx, j) * z_eigen(idx, k)
}

/// Eigenvalue `m_k = ±½` of `Iz⁽ᵏ⁾` on basis state `idx` (qubit 1 most significant).
fn z_eigen(idx: usize, k: usize) -> f64 {
    if (idx >> (3 - k)) & 1 == 0 {
        0.5
    } else {
        -0.5
    }
}

/// `exp(−iα Iz⁽²⁾Iz⁽³⁾)`.
pub fn target_entangler(alpha: f64) -> Result<ComplexMatrix> {
    if alpha == 0.0 {
        return Err(Error::ZeroAlpha);
    }
    Ok(zz_gate(alpha, 2, 3))
}

/// `exp(−iα Iz⁽ʲ⁾Iz⁽ᵏ⁾)` for any pair, with no zero check.
pub fn zz_gate(alpha: f64, j: usize, k: usize) -> ComplexMatrix {
    let diag: Vec<Complex64> = (0..8)
        .map(|idx| Complex64::from_polar(1.0, -alpha * zz_eigen(idx, j, k)))
        .collect();
    ComplexMatrix::from_diag(&diag)
}

/// Common-frame target `U′23(π)`: the entangler followed by the free detuning
/// phases accumulated over `π/J23`.
pub fn target_common_frame(p: &SpinChainParams) -> ComplexMatrix {
    target_common_frame_alpha(p, PI)
}

/// Common-frame target for a general angle, duration `α/J23`.
pub fn target_common_frame_alpha(p: &SpinChainParams, alpha: f64) -> ComplexMatrix {
    let t = alpha / p.j23;
    let diag: Vec<Complex64> = (0..8)
        .map(|idx| {
            let angle = alpha * zz_eigen(idx, 2, 3)
                + p.delta12 * t * z_eigen(idx, 2)
                + p.delta13 * t * z_eigen(idx, 3);
            Complex64::from_polar(1.0, -angle)
        })
        .collect();
    ComplexMatrix::from_diag(&diag)
}

/// `exp(+i(δ12 Iz⁽²⁾ + δ13 Iz⁽³⁾)t) · u`: removes the free detuning precession
/// of the qubit-1 common frame.
pub fn to_individual_frame(u: &ComplexMatrix, p: &SpinChainParams, t: f64) -> Result<ComplexMatrix> {
    to_individual_frame_from(u, p, Qubit::One, t)
}

/// Same as [`to_individual_frame`] for a frame rotating with `carrier`.
pub fn to_individual_frame_from(u: &ComplexMatrix, p: &SpinChainParams, carrier: Qubit, t: f64) -> Result<ComplexMatrix> {
    if u.dim() != 8 {
        return Err(Error::BadDimension {
            expected: 8,
            found: u.dim(),
        });
    }
    if !(t >= 0.0) {
        return Err(Error::BadTiming(format!("frame time must be non-negative, got {t}")));
    }
    let offsets = p.frame_offsets(carrier);
    let mut out = u.clone();
    for r in 0..8 {
        let angle: f64 = (1..=3).map(|k| offsets[k - 1] * z_eigen(r, k)).sum::<f64>() * t;
        let f = Complex64::from_polar(1.0, angle);
        for c in 0..8 {
            out[(r, c)] *= f;
        }
    }
    Ok(out)
}
