use serde::{Deserialize, Serialize};

use super::expander::{correspondence_gate, qubits_for, QubitParam};
use super::sample::{align_rows, compose_m, MultiSample};
use crate::error::{Error, Result};
use crate::exactmath::{Angle, ExactAngle, Rational};
use crate::samplespace::{expand_counts, phase_rotation, theta_count, Label};

/// One `(θ, φ)` pair of the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitSetting {
    pub theta: Angle,
    pub phi: ExactAngle,
}

impl QubitSetting {
    pub fn new(theta: Angle, phi: ExactAngle) -> Self {
        QubitSetting { theta, phi }
    }

    pub fn exact(&self) -> Result<QubitParam> {
        let cos_half_sq = self
            .theta
            .cos_half_sq()
            .ok_or_else(|| Error::NotOnInvariantSet(format!("cos of {} is irrational", self.theta)))?;
        Ok(QubitParam { cos_half_sq, phi: self.phi.clone() })
    }
}

/// Build the `m`-qubit string stack for `2^m - 1` settings.
pub fn m_qubit_sample(n_bits: u32, settings: &[QubitSetting]) -> Result<MultiSample> {
    let params = settings.iter().map(QubitSetting::exact).collect::<Result<Vec<_>>>()?;
    correspondence_gate(&params, n_bits)?;
    let mut counts = Vec::with_capacity(settings.len());
    let mut rotations = Vec::with_capacity(settings.len());
    for s in settings {
        counts.push(theta_count(n_bits, &s.theta)?);
        rotations.push(phase_rotation(n_bits, &s.phi)?);
    }
    m_qubit_from_counts(n_bits, &counts, &rotations)
}

/// As [`m_qubit_sample`] from integer parameters: `a` counts and phase steps per setting.
///
/// Sub-stacks are aligned against the head before composing, so that the head is
/// independent of them.
pub fn m_qubit_from_counts(n_bits: u32, counts: &[u64], rotations: &[u64]) -> Result<MultiSample> {
    if counts.len() != rotations.len() {
        return Err(Error::LengthMismatch { expected: counts.len(), found: rotations.len() });
    }
    let m = qubits_for(counts.len())?;
    let head = expand_counts(n_bits, counts[0], rotations[0])?;
    if m == 1 {
        return Ok(MultiSample::single(head));
    }
    let half = 1 << (m - 1);
    let left = m_qubit_from_counts(n_bits, &counts[1..half], &rotations[1..half])?;
    let right = m_qubit_from_counts(n_bits, &counts[half..], &rotations[half..])?;
    let left = MultiSample::new(align_rows(&head, left.rows(), Label::A)?)?;
    let right = MultiSample::new(align_rows(&head, right.rows(), Label::NotA)?)?;
    compose_m(&head, &left, &right)
}

/// Exact `cos²(θ/2)` and `φ` for each setting, in recursion order.
pub fn exact_params(settings: &[QubitSetting]) -> Result<Vec<QubitParam>> {
    settings.iter().map(QubitSetting::exact).collect()
}

/// `(agreements - disagreements) / 2^N` between two rows.
pub fn row_correlation(ms: &MultiSample, r1: usize, r2: usize) -> Result<Rational> {
    let agree = ms.row(r1).agreements(ms.row(r2))?;
    let len = ms.row(r1).len();
    Ok(Rational::new(2 * agree as i64 - len as i64, len as i64))
}
