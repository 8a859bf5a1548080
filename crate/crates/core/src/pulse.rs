//! Rectangular pulse schedules and their exact propagators.
//!
//! A [`PulseSequence`] lists segments in time order: the first segment acts
//! first, so its propagator ends up rightmost in the product.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::design::{min_valid_n, soft_amplitude};
use crate::error::{Error, Result};
use crate::linalg::{expm_unitary, ComplexMatrix};
use crate::pauli::{spin3, Axis};
use crate::spin::{full_hamiltonian_driven, reduced_hamiltonian, reduced_hamiltonian_driven, Qubit, SpinChainParams};

/// Which Hamiltonian a segment evolves under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// rf on the driven qubit only, no detunings.
    Reduced,
    /// Common rotating frame: rf on all spins plus detuning terms.
    Full,
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reduced" => Ok(Model::Reduced),
            "full" => Ok(Model::Full),
            other => Err(Error::BadParameter(format!("unknown model '{other}'"))),
        }
    }
}

/// Constant-amplitude rf segment; amplitude 0 is free evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSegment {
    pub duration: f64,
    pub amplitude: f64,
    pub phase: f64,
    pub model: Model,
    /// Qubit whose Larmor frequency the carrier matches.
    pub carrier: Qubit,
}

impl PulseSegment {
    pub fn free(duration: f64, model: Model) -> Self {
        Self::pulse(duration, 0.0, 0.0, model)
    }

    pub fn pulse(duration: f64, amplitude: f64, phase: f64, model: Model) -> Self {
        Self {
            duration,
            amplitude,
            phase,
            model,
            carrier: Qubit::One,
        }
    }

    pub fn with_carrier(mut self, carrier: Qubit) -> Self {
        self.carrier = carrier;
        self
    }

    pub fn hamiltonian(&self, p: &SpinChainParams) -> ComplexMatrix {
        match self.model {
            Model::Reduced => reduced_hamiltonian_driven(p, self.carrier, self.amplitude, self.phase),
            Model::Full => full_hamiltonian_driven(p, self.carrier, self.amplitude, self.phase),
        }
    }

    pub fn propagator(&self, p: &SpinChainParams) -> Result<ComplexMatrix> {
        if self.duration == 0.0 {
            return Ok(ComplexMatrix::identity(8));
        }
        expm_unitary(&self.hamiltonian(p), self.duration)
    }

    fn validate(&self) -> Result<()> {
        if !(self.duration >= 0.0) || !self.duration.is_finite() {
            return Err(Error::BadTiming(format!(
                "segment duration must be finite and non-negative, got {}",
                self.duration
            )));
        }
        if !self.amplitude.is_finite() || !self.phase.is_finite() {
            return Err(Error::BadParameter("segment amplitude and phase must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PulseSequence {
    segments: Vec<PulseSegment>,
}

impl PulseSequence {
    pub fn new(segments: Vec<PulseSegment>) -> Result<Self> {
        let mut seq = Self::default();
        for s in segments {
            seq.push(s)?;
        }
        Ok(seq)
    }

    pub fn push(&mut self, segment: PulseSegment) -> Result<()> {
        segment.validate()?;
        if let Some(m) = self.model() {
            if m != segment.model {
                return Err(Error::MixedModels);
            }
        }
        self.segments.push(segment);
        Ok(())
    }

    /// `self` followed in time by `later`.
    pub fn then(&self, later: &PulseSequence) -> Result<Self> {
        let mut out = self.clone();
        for s in &later.segments {
            out.push(s.clone())?;
        }
        Ok(out)
    }

    pub fn segments(&self) -> &[PulseSegment] {
        &self.segments
    }

    pub fn model(&self) -> Option<Model> {
        self.segments.first().map(|s| s.model)
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

/// Time-ordered product of the segment propagators.
pub fn propagate(seq: &PulseSequence, p: &SpinChainParams) -> Result<ComplexMatrix> {
    // Refocusing schedules repeat segments verbatim; exponentiate each distinct one once.
    let mut cache: Vec<(&PulseSegment, ComplexMatrix)> = Vec::new();
    let mut acc = ComplexMatrix::identity(8);
    for seg in &seq.segments {
        let step = match cache.iter().find(|(s, _)| *s == seg) {
            Some((_, u)) => u.clone(),
            None => {
                let u = seg.propagator(p)?;
                cache.push((seg, u.clone()));
                u
            }
        };
        acc = &step * &acc;
    }
    Ok(acc)
}

/// `[free(t*/2 − τ), pulse(τ, ω1), free(t*/2 − τ), pulse(τ, ω1)]`.
pub fn refocusing_sequence(t_star: f64, tau: f64, omega1: f64, model: Model) -> Result<PulseSequence> {
    if !(t_star > 0.0) {
        return Err(Error::BadTiming(format!("t* must be positive, got {t_star}")));
    }
    if !(tau >= 0.0) || tau > t_star / 2.0 {
        return Err(Error::BadTiming(format!(
            "pulse width {tau} outside [0, t*/2 = {}]",
            t_star / 2.0
        )));
    }
    let gap = t_star / 2.0 - tau;
    let free = PulseSegment::free(gap, model);
    let pulse = PulseSegment::pulse(tau, omega1, 0.0, model);
    PulseSequence::new(vec![free.clone(), pulse.clone(), free, pulse])
}

/// Single weak pulse on qubit 1 of length `α/J23` at the smallest admissible amplitude.
pub fn soft_pulse_sequence(alpha: f64, p: &SpinChainParams, model: Model) -> Result<PulseSequence> {
    if !(alpha > 0.0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    let n = min_valid_n(alpha, p.j12, p.j23)?;
    let sol = soft_amplitude(alpha, p.j12, p.j23, n)?;
    PulseSequence::new(vec![PulseSegment::pulse(sol.tau, sol.omega_plus, 0.0, model)])
}

/// Refocusing with instantaneous π-pulses about x on qubit 1, reduced model:
/// `X²·e^{−iH(0)t*/2}·X²·e^{−iH(0)t*/2}`.
pub fn hard_limit_propagator(t_star: f64, p: &SpinChainParams) -> Result<ComplexMatrix> {
    if !(t_star > 0.0) {
        return Err(Error::BadTiming(format!("t* must be positive, got {t_star}")));
    }
    let kick = expm_unitary(&spin3(Axis::X, 1), PI)?;
    let free = expm_unitary(&reduced_hamiltonian(p, 0.0), t_star / 2.0)?;
    let half = &kick * &free;
    Ok(&half * &half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::{target_entangler, TWO_PI};

    #[test]
    fn empty_sequence_is_identity() {
        let p = SpinChainParams::alanine();
        let seq = PulseSequence::default();
        assert_eq!(propagate(&seq, &p).unwrap(), ComplexMatrix::identity(8));
    }

    #[test]
    fn single_free_segment() {
        let p = SpinChainParams::alanine();
        let seq = PulseSequence::new(vec![PulseSegment::free(0.004, Model::Full)]).unwrap();
        let h0 = crate::spin::full_hamiltonian(&p, 0.0, 0.0);
        let expected = expm_unitary(&h0, 0.004).unwrap();
        assert!(propagate(&seq, &p).unwrap().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn split_segment_matches_unsplit() {
        let p = SpinChainParams::alanine();
        let w = 300.0 * TWO_PI;
        let whole = PulseSequence::new(vec![PulseSegment::pulse(0.003, w, 0.4, Model::Full)]).unwrap();
        let split = PulseSequence::new(vec![
            PulseSegment::pulse(0.001, w, 0.4, Model::Full),
            PulseSegment::pulse(0.002, w, 0.4, Model::Full),
        ])
        .unwrap();
        let a = propagate(&whole, &p).unwrap();
        let b = propagate(&split, &p).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-10);
    }

    #[test]
    fn rejects_mixed_models_and_negative_durations() {
        let mut seq = PulseSequence::default();
        seq.push(PulseSegment::free(1e-3, Model::Full)).unwrap();
        assert_eq!(seq.push(PulseSegment::free(1e-3, Model::Reduced)), Err(Error::MixedModels));
        assert!(matches!(
            seq.push(PulseSegment::free(-1e-3, Model::Full)),
            Err(Error::BadTiming(_))
        ));
    }

    #[test]
    fn refocusing_layout() {
        let t_star = 0.009;
        let seq = refocusing_sequence(t_star, 0.0007, 4000.0, Model::Reduced).unwrap();
        let s = seq.segments();
        assert_eq!(s.len(), 4);
        assert_eq!(s[0].amplitude, 0.0);
        assert_eq!(s[1].amplitude, 4000.0);
        assert_eq!(s[2].amplitude, 0.0);
        assert_eq!(s[3].duration, 0.0007);
        assert!((seq.total_duration() - t_star).abs() < 1e-15);
        assert!(matches!(
            refocusing_sequence(t_star, 0.006, 1.0, Model::Reduced),
            Err(Error::BadTiming(_))
        ));
    }

    #[test]
    fn refocusing_with_zero_width_is_free_evolution() {
        let p = SpinChainParams::alanine();
        let t_star = p.gate_time();
        let seq = refocusing_sequence(t_star, 0.0, 1e4, Model::Reduced).unwrap();
        let free = expm_unitary(&reduced_hamiltonian(&p, 0.0), t_star).unwrap();
        assert!(propagate(&seq, &p).unwrap().max_abs_diff(&free) < 1e-10);
    }

    #[test]
    fn hard_limit_identity() {
        let p = SpinChainParams::alanine();
        for alpha in [PI, 2.0 * PI] {
            let u = hard_limit_propagator(alpha / p.j23, &p).unwrap();
            let target = target_entangler(alpha).unwrap().scale_real(-1.0);
            assert!(u.max_abs_diff(&target) < 1e-10);
        }
    }

    #[test]
    fn short_pulses_approach_hard_limit() {
        let p = SpinChainParams::alanine();
        let t_star = p.gate_time();
        let tau = 1e-7;
        let seq = refocusing_sequence(t_star, tau, PI / tau, Model::Reduced).unwrap();
        let finite = propagate(&seq, &p).unwrap();
        let ideal = hard_limit_propagator(t_star, &p).unwrap();
        assert!(finite.max_abs_diff(&ideal) < 1e-4);
    }

    #[test]
    fn soft_sequence_for_alanine() {
        let p = SpinChainParams::alanine();
        let seq = soft_pulse_sequence(PI, &p, Model::Reduced).unwrap();
        let s = &seq.segments()[0];
        assert!((s.duration * 1e3 - 9.29).abs() < 0.01);
        assert!((s.amplitude / TWO_PI - 106.0).abs() < 1.0);
        assert!(soft_pulse_sequence(-1.0, &p, Model::Reduced).is_err());
    }

    #[test]
    fn soft_sequence_without_j12_uses_twice_j23() {
        let p = SpinChainParams::new(1e-300, 300.0, -1e4, -2e4, "synthetic").unwrap();
        let seq = soft_pulse_sequence(PI, &p, Model::Reduced).unwrap();
        assert!((seq.segments()[0].amplitude - 2.0 * p.j23).abs() < 1e-9);
    }

    #[test]
    fn soft_sequence_is_entangler_up_to_phase() {
        let p = SpinChainParams::alanine();
        for alpha in [PI / 2.0, PI, 1.5 * PI] {
            let seq = soft_pulse_sequence(alpha, &p, Model::Reduced).unwrap();
            let u = propagate(&seq, &p).unwrap();
            let target = target_entangler(alpha).unwrap();
            let f = crate::design::propagator_fidelity(&target, &u).unwrap();
            assert!(1.0 - f < 1e-9, "alpha {alpha}: F = {f}");
        }
    }
}
