//! Soft-pulse gate design and propagator-fidelity optimization.
//!
//! A weak rectangular pulse of length `τ = α/J23` on qubit 1 leaves only
//! `U23(α)` behind when `exp(−i(ω1·Ix⁽¹⁾ + J12·Iz⁽¹⁾Iz⁽²⁾)τ)` is a global
//! phase. That happens for `ω± = ±√(4π²n²J23²/α² − J12²/4)`; the smallest
//! admissible `n` gives the weakest pulse and hence the smallest
//! Bloch-Siegert shift.
//!
//! The refocusing alternative is scored with `F = |Tr(U′†V)|/8` over the
//! normalized plane `τ̃ = 2J23τ/π`, `ω̃1 = ω1τ/π`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{expm_unitary, identity_up_to_phase, ComplexMatrix};
use crate::pauli::{spin3, zz3, Axis};
use crate::pulse::{propagate, refocusing_sequence, Model};
use crate::simplex::{self, SimplexOptions};
use crate::spin::{target_common_frame, SpinChainParams};

/// Unitarity tolerance for fidelity inputs.
pub const UNITARY_TOL: f64 = 1e-8;
/// Max distance of a cancellation phase from the `2πk/8` lattice.
pub const PHASE_SNAP_TOL: f64 = 1e-6;
/// Grid resolution of the coarse scan preceding local refinement.
pub const COARSE_GRID: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SoftPulseSolution {
    pub n: u32,
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub tau: f64,
}

fn radicand(alpha: f64, j12: f64, j23: f64, n: u32) -> f64 {
    let n = f64::from(n);
    4.0 * PI * PI * n * n * j23 * j23 / (alpha * alpha) - j12 * j12 / 4.0
}

fn check_alpha_j23(alpha: f64, j23: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    if !(j23 > 0.0) || !j23.is_finite() {
        return Err(Error::BadParameter(format!("active coupling must be positive, got {j23}")));
    }
    Ok(())
}

/// Smallest `n ≥ 1` with a positive radicand.
pub fn min_valid_n(alpha: f64, j12: f64, j23: f64) -> Result<u32> {
    check_alpha_j23(alpha, j23)?;
    if !j12.is_finite() {
        return Err(Error::BadParameter("spectator coupling must be finite".into()));
    }
    let mut n = 1;
    while radicand(alpha, j12, j23, n) <= 0.0 {
        n += 1;
    }
    Ok(n)
}

/// Both signed amplitudes for a given `n`. `j23` is the coupling being kept,
/// `j12` the one being cancelled.
pub fn soft_amplitude(alpha: f64, j12: f64, j23: f64, n: u32) -> Result<SoftPulseSolution> {
    check_alpha_j23(alpha, j23)?;
    let r = radicand(alpha, j12, j23, n);
    if n == 0 || !(r > 0.0) {
        return Err(Error::NoValidN { n, radicand: r });
    }
    let w = r.sqrt();
    Ok(SoftPulseSolution {
        n,
        omega_plus: w,
        omega_minus: -w,
        tau: alpha / j23,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CancellationCheck {
    pub ok: bool,
    /// Phase snapped to `2πk/8` when `ok`, otherwise `arg(u[0,0])`.
    pub phase: f64,
    pub raw_phase: f64,
    pub lattice_k: Option<u32>,
    /// `max |u − e^{iφ}I|`.
    pub residual: f64,
}

/// Tests whether the drive plus the unwanted coupling exponentiate to a global
/// phase over `τ = α/J23`.
pub fn verify_cancellation(omega1: f64, alpha: f64, p: &SpinChainParams, tol: f64) -> Result<CancellationCheck> {
    check_alpha_j23(alpha, p.j23)?;
    let generator = &spin3(Axis::X, 1).scale_real(omega1) + &zz3(1, 2).scale_real(p.j12);
    let u = expm_unitary(&generator, alpha / p.j23)?;
    let check = identity_up_to_phase(&u, tol);
    let residual = u.max_abs_diff(
        &ComplexMatrix::identity(8).scale(num_complex::Complex64::from_polar(1.0, check.phase)),
    );
    let on_lattice = check.lattice_offset.is_some_and(|off| off <= PHASE_SNAP_TOL);
    let ok = check.is_phase_identity && on_lattice;
    let phase = match (ok, check.lattice_k) {
        (true, Some(k)) => f64::from(k) * PI / 4.0,
        _ => check.phase,
    };
    Ok(CancellationCheck {
        ok,
        phase,
        raw_phase: check.phase,
        lattice_k: if ok { check.lattice_k } else { None },
        residual,
    })
}

/// `|Tr(u†v)| / dim`, insensitive to global phase.
pub fn propagator_fidelity(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::BadDimension {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    for m in [u, v] {
        let err = m.unitarity_error();
        if err >= UNITARY_TOL {
            return Err(Error::NotUnitary(err));
        }
    }
    Ok((u.inner(v).norm() / u.dim() as f64).min(1.0))
}

/// Physical pulse width and amplitude for a point of the normalized plane.
/// A zero width maps to zero amplitude.
pub fn denormalize(tau_tilde: f64, omega_tilde: f64, p: &SpinChainParams) -> (f64, f64) {
    let tau = tau_tilde * p.gate_time() / 2.0;
    let omega1 = if tau > 0.0 { omega_tilde * PI / tau } else { 0.0 };
    (tau, omega1)
}

/// Refocusing propagator under the full model over a total time `π/J23`.
pub fn refocusing_propagator_full(tau_tilde: f64, omega_tilde: f64, p: &SpinChainParams) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&tau_tilde) {
        return Err(Error::BadTiming(format!("normalized width {tau_tilde} outside [0, 1]")));
    }
    if !omega_tilde.is_finite() {
        return Err(Error::BadParameter("normalized amplitude must be finite".into()));
    }
    let (tau, omega1) = denormalize(tau_tilde, omega_tilde, p);
    let seq = refocusing_sequence(p.gate_time(), tau, omega1, Model::Full)?;
    propagate(&seq, p)
}

/// Fidelity of the full-model refocusing sequence against `U′23(π)`.
pub fn fidelity_at(tau_tilde: f64, omega_tilde: f64, p: &SpinChainParams) -> Result<f64> {
    let v = refocusing_propagator_full(tau_tilde, omega_tilde, p)?;
    propagator_fidelity(&target_common_frame(p), &v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandscapeSample {
    pub tau_tilde: f64,
    pub omega_tilde: f64,
    pub fidelity: f64,
}

/// Fidelity sampled on a uniform grid over `[0,1]²`.
///
/// Samples are row-major with `tau_tilde` as the row (outer) index and
/// `omega_tilde` as the column (inner) index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelityLandscape {
    pub n_tau: usize,
    pub n_omega: usize,
    pub samples: Vec<LandscapeSample>,
}

impl FidelityLandscape {
    pub fn get(&self, i_tau: usize, j_omega: usize) -> &LandscapeSample {
        &self.samples[i_tau * self.n_omega + j_omega]
    }

    /// Highest-fidelity sample; the first one wins ties.
    pub fn best(&self) -> (usize, usize, LandscapeSample) {
        let mut best = 0;
        for (k, s) in self.samples.iter().enumerate() {
            if s.fidelity > self.samples[best].fidelity {
                best = k;
            }
        }
        (best / self.n_omega, best % self.n_omega, self.samples[best])
    }
}

fn grid_point(i: usize, n: usize) -> f64 {
    i as f64 / (n - 1) as f64
}

pub fn landscape_scan(p: &SpinChainParams, n_tau: usize, n_omega: usize) -> Result<FidelityLandscape> {
    if n_tau < 2 || n_omega < 2 {
        return Err(Error::BadParameter(format!(
            "landscape grid needs at least 2x2 points, got {n_tau}x{n_omega}"
        )));
    }
    let target = target_common_frame(p);
    let mut samples = Vec::with_capacity(n_tau * n_omega);
    for i in 0..n_tau {
        let tau_tilde = grid_point(i, n_tau);
        for j in 0..n_omega {
            let omega_tilde = grid_point(j, n_omega);
            let v = refocusing_propagator_full(tau_tilde, omega_tilde, p)?;
            samples.push(LandscapeSample {
                tau_tilde,
                omega_tilde,
                fidelity: propagator_fidelity(&target, &v)?,
            });
        }
    }
    Ok(FidelityLandscape {
        n_tau,
        n_omega,
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Optimum {
    pub tau_tilde: f64,
    pub omega_tilde: f64,
    pub fidelity: f64,
    /// Best sample of the coarse grid the refinement started from.
    pub grid_best: LandscapeSample,
    pub evaluations: usize,
}

impl Optimum {
    /// `(τ [s], ω1 [rad/s])` of the optimum.
    pub fn physical(&self, p: &SpinChainParams) -> (f64, f64) {
        denormalize(self.tau_tilde, self.omega_tilde, p)
    }
}

/// Coarse 101×101 scan, then simplex descent on `1 − F` from the best cell.
pub fn optimize_fidelity(p: &SpinChainParams) -> Result<Optimum> {
    let grid = landscape_scan(p, COARSE_GRID, COARSE_GRID)?;
    refine_from_grid(p, &grid)
}

/// Local refinement starting at the best sample of `grid`.
pub fn refine_from_grid(p: &SpinChainParams, grid: &FidelityLandscape) -> Result<Optimum> {
    let (i, j, best) = grid.best();
    let h_tau = 1.0 / (grid.n_tau - 1) as f64;
    let h_omega = 1.0 / (grid.n_omega - 1) as f64;
    let step_tau = if i + 1 < grid.n_tau { h_tau } else { -h_tau };
    let step_omega = if j + 1 < grid.n_omega { h_omega } else { -h_omega };
    let x0 = [best.tau_tilde, best.omega_tilde];
    let initial = [x0, [x0[0] + step_tau, x0[1]], [x0[0], x0[1] + step_omega]];

    let target = target_common_frame(p);
    let mut failure = None;
    let result = simplex::minimize(
        |x| match refocusing_propagator_full(x[0], x[1], p)
            .and_then(|v| propagator_fidelity(&target, &v))
        {
            Ok(f) => 1.0 - f,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        },
        initial,
        SimplexOptions::default(),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let refined = 1.0 - result.f;
    let (tau_tilde, omega_tilde, fidelity) = if refined >= best.fidelity {
        (result.x[0], result.x[1], refined)
    } else {
        (best.tau_tilde, best.omega_tilde, best.fidelity)
    };
    Ok(Optimum {
        tau_tilde,
        omega_tilde,
        fidelity,
        grid_best: best,
        evaluations: result.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::{target_entangler, TWO_PI};

    #[test]
    fn min_n_examples() {
        let p = SpinChainParams::alanine();
        assert_eq!(min_valid_n(PI, p.j12, p.j23).unwrap(), 1);
        assert_eq!(min_valid_n(PI, 0.0, p.j23).unwrap(), 1);
        assert!(min_valid_n(-1.0, p.j12, p.j23).is_err());
    }

    #[test]
    fn min_n_matches_scan_oracle_with_swapped_roles() {
        let (j23, j12) = (34.8 * TWO_PI, 53.8 * TWO_PI);
        let alpha = 8.0 * PI;
        // oracle: first n with 4π²n²j23²/α² > j12²/4, i.e. n > α j12 / (4π j23)
        let oracle = (1u32..).find(|&n| {
            let n = f64::from(n);
            (2.0 * PI * n * j23 / alpha).powi(2) > (j12 / 2.0).powi(2)
        });
        assert_eq!(min_valid_n(alpha, j12, j23).unwrap(), oracle.unwrap());
        assert_eq!(oracle, Some(4));
    }

    #[test]
    fn soft_amplitude_alanine() {
        let p = SpinChainParams::alanine();
        let s = soft_amplitude(PI, p.j12, p.j23, 1).unwrap();
        assert!((s.omega_plus / TWO_PI - 106.0).abs() < 1.0);
        assert_eq!(s.omega_minus, -s.omega_plus);
        assert!((s.tau * 1e3 - 9.29).abs() < 0.01);
    }

    #[test]
    fn soft_amplitude_closed_form_and_errors() {
        let j23 = 300.0;
        let s = soft_amplitude(PI, 0.0, j23, 1).unwrap();
        assert_eq!(s.omega_plus, 2.0 * j23);
        assert!(matches!(
            soft_amplitude(8.0 * PI, 53.8 * TWO_PI, 34.8 * TWO_PI, 1),
            Err(Error::NoValidN { n: 1, .. })
        ));
        assert!(matches!(soft_amplitude(PI, 1.0, 1.0, 0), Err(Error::NoValidN { n: 0, .. })));
    }

    #[test]
    fn spectator_swapped_amplitude_cancels() {
        // keep J12, cancel J23 with a pulse on qubit 3
        let p = SpinChainParams::alanine();
        let s = soft_amplitude(PI, p.j23, p.j12, 1).unwrap();
        let expected_hz = (4.0 * 34.8f64.powi(2) - 53.8f64.powi(2) / 4.0).sqrt();
        assert!((s.omega_plus / TWO_PI - expected_hz).abs() < 1e-9);
        let gen = &spin3(Axis::X, 3).scale_real(s.omega_plus) + &zz3(2, 3).scale_real(p.j23);
        let u = expm_unitary(&gen, s.tau).unwrap();
        assert!(identity_up_to_phase(&u, 1e-9).is_phase_identity);
    }

    #[test]
    fn cancellation_cases() {
        let p = SpinChainParams::alanine();
        let s = soft_amplitude(PI, p.j12, p.j23, 1).unwrap();
        let c = verify_cancellation(s.omega_plus, PI, &p, 1e-9).unwrap();
        assert!(c.ok);
        assert_eq!(c.lattice_k, Some(4));
        assert!((c.raw_phase.abs() - PI).abs() < 1e-6);

        let c = verify_cancellation(1.1 * s.omega_plus, PI, &p, 1e-9).unwrap();
        assert!(!c.ok);

        let mut q = p.clone();
        q.j12 = 1e-300;
        let tau = PI / q.j23;
        let c = verify_cancellation(2.0 * PI / tau, PI, &q, 1e-9).unwrap();
        assert!(c.ok);
        assert!((c.phase - PI).abs() < 1e-15);
    }

    #[test]
    fn cancellation_holds_for_several_n() {
        let p = SpinChainParams::alanine();
        for alpha in [PI / 2.0, PI] {
            for n in 1..=3 {
                let s = soft_amplitude(alpha, p.j12, p.j23, n).unwrap();
                assert!(verify_cancellation(s.omega_plus, alpha, &p, 1e-9).unwrap().ok);
                assert!(verify_cancellation(s.omega_minus, alpha, &p, 1e-9).unwrap().ok);
            }
        }
    }

    #[test]
    fn fidelity_basics() {
        let u = target_entangler(1.3).unwrap();
        assert!((propagator_fidelity(&u, &u).unwrap() - 1.0).abs() < 1e-15);
        let shifted = u.scale(num_complex::Complex64::from_polar(1.0, 0.77));
        assert!((propagator_fidelity(&u, &shifted).unwrap() - 1.0).abs() < 1e-15);

        let f = propagator_fidelity(&ComplexMatrix::identity(8), &target_entangler(PI).unwrap()).unwrap();
        // direct trace: 4 entries e^{-iπ/4} and 4 entries e^{+iπ/4} → 8 cos(π/4) / 8
        assert!((f - (PI / 4.0).cos()).abs() < 1e-15);

        let bad = ComplexMatrix::identity(8).scale_real(2.0);
        assert!(matches!(propagator_fidelity(&u, &bad), Err(Error::NotUnitary(_))));
        assert!(matches!(
            propagator_fidelity(&u, &ComplexMatrix::identity(4)),
            Err(Error::BadDimension { .. })
        ));
    }

    #[test]
    fn refocusing_full_degenerate_points() {
        let p = SpinChainParams::alanine();
        let free = expm_unitary(&crate::spin::full_hamiltonian(&p, 0.0, 0.0), p.gate_time()).unwrap();
        assert!(refocusing_propagator_full(0.4, 0.0, &p).unwrap().max_abs_diff(&free) < 1e-9);
        assert!(refocusing_propagator_full(0.0, 0.7, &p).unwrap().max_abs_diff(&free) < 1e-9);

        // τ̃ = 1: two back-to-back pulses equal one pulse of twice the length
        let (tau, w) = denormalize(1.0, 0.8, &p);
        let merged = expm_unitary(&crate::spin::full_hamiltonian(&p, w, 0.0), 2.0 * tau).unwrap();
        assert!(refocusing_propagator_full(1.0, 0.8, &p).unwrap().max_abs_diff(&merged) < 1e-9);
        assert!((2.0 * tau - p.gate_time()).abs() < 1e-18);

        assert!(refocusing_propagator_full(1.01, 0.5, &p).is_err());
    }

    #[test]
    fn landscape_corners() {
        let p = SpinChainParams::alanine();
        let l = landscape_scan(&p, 2, 2).unwrap();
        assert_eq!(l.samples.len(), 4);
        let corners: Vec<(f64, f64)> = l.samples.iter().map(|s| (s.tau_tilde, s.omega_tilde)).collect();
        assert_eq!(corners, vec![(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]);
        assert!(l.samples.iter().all(|s| (0.0..=1.0).contains(&s.fidelity)));
        assert!(landscape_scan(&p, 1, 5).is_err());
    }

    #[test]
    fn fidelity_invariant_under_axis_reflection() {
        // ω1 → −ω1 with phase → phase + π leaves the Hamiltonian unchanged
        let p = SpinChainParams::alanine();
        let target = target_common_frame(&p);
        for (tt, wt) in [(0.3, 0.9), (0.947, 0.987), (1.0, 0.5)] {
            let (tau, w) = denormalize(tt, wt, &p);
            let a = crate::pulse::PulseSequence::new(vec![
                crate::pulse::PulseSegment::free(p.gate_time() / 2.0 - tau, Model::Full),
                crate::pulse::PulseSegment::pulse(tau, w, 0.0, Model::Full),
                crate::pulse::PulseSegment::free(p.gate_time() / 2.0 - tau, Model::Full),
                crate::pulse::PulseSegment::pulse(tau, w, 0.0, Model::Full),
            ])
            .unwrap();
            let b = crate::pulse::PulseSequence::new(
                a.segments()
                    .iter()
                    .map(|s| crate::pulse::PulseSegment::pulse(s.duration, -s.amplitude, PI, Model::Full))
                    .collect(),
            )
            .unwrap();
            let fa = propagator_fidelity(&target, &propagate(&a, &p).unwrap()).unwrap();
            let fb = propagator_fidelity(&target, &propagate(&b, &p).unwrap()).unwrap();
            assert!((fa - fb).abs() < 1e-10);
            assert!((fa - fidelity_at(tt, wt, &p).unwrap()).abs() < 1e-12);
        }
    }
}
