//! Fully correlated Pauli noise on three qubits and its encode/decode cure.
//!
//! The channel applies the same Pauli to every qubit:
//! `ℰ(ρ) = Σ p_i E_i ρ E_i†` with `E_i ∈ {σ0⊗³, σx⊗³, σy⊗³, σz⊗³}`.
//! Encoding and decoding are the NMR-form operator products built from two
//! ZZ entanglers each plus instantaneous single-qubit rotations. Qubit 2
//! carries the data; qubits 1 and 3 are ancillae in arbitrary states.
//!
//! With `ideal = false` each entangler is replaced by a full-model soft-pulse
//! simulation: `U23(π)` by a weak pulse on qubit 1, `U12(π)` by a weak pulse on
//! qubit 3, each mapped back to the individual rotating frames before use.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::design::{min_valid_n, soft_amplitude};
use crate::error::{Error, Result};
use crate::linalg::{expm_unitary, partial_trace_keep_middle, ComplexMatrix, StateVector};
use crate::pauli::{sigma, spin3, tensor, Axis};
use crate::pulse::{propagate, Model, PulseSegment, PulseSequence};
use crate::spin::{to_individual_frame_from, zz_gate, Qubit, SpinChainParams};

/// Probability-sum tolerance for a valid channel.
pub const CHANNEL_TOL: f64 = 1e-12;
/// Seed for the reproducible state draws in recovery statistics.
pub const RECOVERY_SEED: u64 = 0x005E_ED0F_50F7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelatedChannel {
    p: [f64; 4],
}

impl CorrelatedChannel {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        if p.iter().any(|&x| !x.is_finite() || x < 0.0) {
            return Err(Error::BadChannel(format!("probabilities must be finite and non-negative: {p:?}")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > CHANNEL_TOL {
            return Err(Error::BadChannel(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(Self { p })
    }

    pub fn uniform() -> Self {
        Self { p: [0.25; 4] }
    }

    pub fn noiseless() -> Self {
        Self { p: [1.0, 0.0, 0.0, 0.0] }
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.p
    }
}

/// `[σ0⊗³, σx⊗³, σy⊗³, σz⊗³]`.
pub fn kraus_set() -> [ComplexMatrix; 4] {
    let cube = |m: ComplexMatrix| tensor(&[m.clone(), m.clone(), m]);
    [
        ComplexMatrix::identity(8),
        cube(sigma(Axis::X)),
        cube(sigma(Axis::Y)),
        cube(sigma(Axis::Z)),
    ]
}

pub fn apply_channel(rho: &ComplexMatrix, ch: &CorrelatedChannel) -> Result<ComplexMatrix> {
    if rho.dim() != 8 {
        return Err(Error::BadDimension {
            expected: 8,
            found: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(8);
    for (e, &p) in kraus_set().iter().zip(&ch.p) {
        if p != 0.0 {
            out = &out + &e.conjugate(rho).scale_real(p);
        }
    }
    Ok(out)
}

/// `exp(−i·angle·I_axis⁽ᵏ⁾)`.
fn rotation(axis: Axis, qubit: usize, angle: f64) -> ComplexMatrix {
    expm_unitary(&spin3(axis, qubit), angle).expect("spin operators are Hermitian")
}

/// Soft-pulse `U23(π)` under the full model, individual frame.
pub fn soft_gate_23(p: &SpinChainParams) -> Result<ComplexMatrix> {
    soft_gate(p, Qubit::One, p.j12, p.j23)
}

/// Soft-pulse `U12(π)`: the pulse drives qubit 3 and cancels `J23`, keeping `J12`.
pub fn soft_gate_12(p: &SpinChainParams) -> Result<ComplexMatrix> {
    soft_gate(p, Qubit::Three, p.j23, p.j12)
}

fn soft_gate(p: &SpinChainParams, driven: Qubit, cancelled: f64, kept: f64) -> Result<ComplexMatrix> {
    let n = min_valid_n(PI, cancelled, kept)?;
    let sol = soft_amplitude(PI, cancelled, kept, n)?;
    let seq = PulseSequence::new(vec![
        PulseSegment::pulse(sol.tau, sol.omega_plus, 0.0, Model::Full).with_carrier(driven),
    ])?;
    to_individual_frame_from(&propagate(&seq, p)?, p, driven, sol.tau)
}

fn entanglers(ideal: bool, p: &SpinChainParams) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if ideal {
        Ok((zz_gate(PI, 1, 2), zz_gate(PI, 2, 3)))
    } else {
        Ok((soft_gate_12(p)?, soft_gate_23(p)?))
    }
}

/// `R2y(π/2)·U23(π)·R2x(−π/2)·R1y(−π/2)·U12(π)` where `Rky(θ) = exp(−iθ Iy⁽ᵏ⁾)`.
pub fn encode_operator(ideal: bool, p: &SpinChainParams) -> Result<ComplexMatrix> {
    let (u12, u23) = entanglers(ideal, p)?;
    Ok(encode_from(&u12, &u23))
}

/// `U12(π)·R1y(π/2)·R2x(−π/2)·U23(π)·R2y(−π/2)`.
pub fn decode_operator(ideal: bool, p: &SpinChainParams) -> Result<ComplexMatrix> {
    let (u12, u23) = entanglers(ideal, p)?;
    Ok(decode_from(&u12, &u23))
}

fn encode_from(u12: &ComplexMatrix, u23: &ComplexMatrix) -> ComplexMatrix {
    [
        rotation(Axis::Y, 2, PI / 2.0),
        u23.clone(),
        rotation(Axis::X, 2, -PI / 2.0),
        rotation(Axis::Y, 1, -PI / 2.0),
        u12.clone(),
    ]
    .iter()
    .fold(ComplexMatrix::identity(8), |acc, m| &acc * m)
}

fn decode_from(u12: &ComplexMatrix, u23: &ComplexMatrix) -> ComplexMatrix {
    [
        u12.clone(),
        rotation(Axis::Y, 1, PI / 2.0),
        rotation(Axis::X, 2, -PI / 2.0),
        u23.clone(),
        rotation(Axis::Y, 2, -PI / 2.0),
    ]
    .iter()
    .fold(ComplexMatrix::identity(8), |acc, m| &acc * m)
}

/// The stated products `U_R E_i U_E`, in Kraus order:
/// `−4 Iz⊗I⊗Iz`, `2i I⊗I⊗Ix`, `−4 Iy⊗I⊗Ix`, `−4i Ix⊗I⊗Iz`.
pub fn stated_recovery_operators() -> [ComplexMatrix; 4] {
    let i2 = || ComplexMatrix::identity(2);
    let half = |a| sigma(a).scale_real(0.5);
    [
        tensor(&[half(Axis::Z), i2(), half(Axis::Z)]).scale_real(-4.0),
        tensor(&[i2(), i2(), half(Axis::X)]).scale(Complex64::new(0.0, 2.0)),
        tensor(&[half(Axis::Y), i2(), half(Axis::X)]).scale_real(-4.0),
        tensor(&[half(Axis::X), i2(), half(Axis::Z)]).scale(Complex64::new(0.0, -4.0)),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub index: usize,
    pub holds: bool,
    /// `max |U_R E_i U_E − e^{iφ}·RHS_i|` at the fitted phase.
    pub residual: f64,
    /// Fitted global phase `φ = arg Tr(RHS† · U_R E_i U_E)`.
    pub phase: f64,
}

/// Checks each ideal `U_R E_i U_E` against its stated operator up to one global phase.
pub fn operator_identity_check(tol: f64) -> Vec<IdentityCheck> {
    let p = SpinChainParams::alanine(); // ideal operators do not depend on the molecule
    let enc = encode_operator(true, &p).expect("ideal encode");
    let dec = decode_operator(true, &p).expect("ideal decode");
    kraus_set()
        .iter()
        .zip(stated_recovery_operators())
        .enumerate()
        .map(|(index, (e, rhs))| {
            let m = &(&dec * e) * &enc;
            let phase = rhs.inner(&m).arg();
            let residual = m.max_abs_diff(&rhs.scale(Complex64::from_polar(1.0, phase)));
            IdentityCheck {
                index,
                holds: residual < tol,
                residual,
                phase,
            }
        })
        .collect()
}

/// Encode and decode operators built once for repeated recovery checks.
#[derive(Debug, Clone)]
pub struct QecCircuit {
    pub encode: ComplexMatrix,
    pub decode: ComplexMatrix,
}

impl QecCircuit {
    pub fn new(ideal: bool, p: &SpinChainParams) -> Result<Self> {
        let (u12, u23) = entanglers(ideal, p)?;
        Ok(Self {
            encode: encode_from(&u12, &u23),
            decode: decode_from(&u12, &u23),
        })
    }

    /// Data-qubit state after encode, noise and decode.
    pub fn recover(&self, rho: &ComplexMatrix, ch: &CorrelatedChannel) -> Result<ComplexMatrix> {
        let encoded = self.encode.conjugate(rho);
        let noisy = apply_channel(&encoded, ch)?;
        partial_trace_keep_middle(&self.decode.conjugate(&noisy))
    }

    /// `<ψ| Tr_{1,3}(...) |ψ>` for ancillae given as density matrices.
    pub fn recovery_fidelity(
        &self,
        ancilla1: &ComplexMatrix,
        ancilla3: &ComplexMatrix,
        psi: &StateVector,
        ch: &CorrelatedChannel,
    ) -> Result<f64> {
        for m in [ancilla1, ancilla3] {
            if m.dim() != 2 {
                return Err(Error::BadDimension {
                    expected: 2,
                    found: m.dim(),
                });
            }
        }
        if psi.dim() != 2 {
            return Err(Error::BadDimension {
                expected: 2,
                found: psi.dim(),
            });
        }
        let rho = ancilla1.kron(&psi.density()).kron(ancilla3);
        let out = self.recover(&rho, ch)?;
        Ok(psi.expectation(&out).re)
    }
}

/// Recovery fidelity of data state `psi` with pure ancillae `u` (qubit 1) and `v` (qubit 3).
pub fn recovery_check(
    u: &StateVector,
    v: &StateVector,
    psi: &StateVector,
    ch: &CorrelatedChannel,
    ideal: bool,
    p: &SpinChainParams,
) -> Result<f64> {
    QecCircuit::new(ideal, p)?.recovery_fidelity(&u.density(), &v.density(), psi, ch)
}

/// As [`recovery_check`] with mixed ancillae.
pub fn recovery_check_mixed(
    rho_u: &ComplexMatrix,
    rho_v: &ComplexMatrix,
    psi: &StateVector,
    ch: &CorrelatedChannel,
    ideal: bool,
    p: &SpinChainParams,
) -> Result<f64> {
    QecCircuit::new(ideal, p)?.recovery_fidelity(rho_u, rho_v, psi, ch)
}

/// Uniform draw on the Bloch sphere: `cos θ = 1 − 2u₁`, `φ = 2πu₂`.
pub fn random_bloch_state<R: Rng>(rng: &mut R) -> StateVector {
    let cos_theta = 1.0 - 2.0 * rng.gen::<f64>();
    let phi = 2.0 * PI * rng.gen::<f64>();
    StateVector::bloch(cos_theta.clamp(-1.0, 1.0).acos(), phi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecoveryStats {
    pub trials: usize,
    pub min: f64,
    pub mean: f64,
}

/// Recovery fidelity over `trials` seeded draws of `(u, v, ψ)`.
/// Trial `k` uses its own generator seeded with `seed + k`.
pub fn recovery_statistics(
    p: &SpinChainParams,
    ch: &CorrelatedChannel,
    trials: usize,
    ideal: bool,
    seed: u64,
) -> Result<RecoveryStats> {
    if trials == 0 {
        return Err(Error::BadParameter("at least one trial is required".into()));
    }
    let circuit = QecCircuit::new(ideal, p)?;
    let mut min = f64::INFINITY;
    let mut sum = 0.0;
    for k in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        let u = random_bloch_state(&mut rng);
        let psi = random_bloch_state(&mut rng);
        let v = random_bloch_state(&mut rng);
        let f = circuit.recovery_fidelity(&u.density(), &v.density(), &psi, ch)?;
        min = min.min(f);
        sum += f;
    }
    Ok(RecoveryStats {
        trials,
        min,
        mean: sum / trials as f64,
    })
}

/// Recovery statistics with soft-pulse entanglers and the fixed seed.
pub fn soft_pulse_recovery_fidelity(p: &SpinChainParams, ch: &CorrelatedChannel, trials: usize) -> Result<RecoveryStats> {
    recovery_statistics(p, ch, trials, false, RECOVERY_SEED)
}
