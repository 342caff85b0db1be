use serde::{Deserialize, Serialize};

use super::build::{m_qubit_sample, row_correlation, QubitSetting};
use super::expander::correspondence_gate;
use super::sample::{compose_pair, MultiSample};
use crate::error::{Error, Result};
use crate::exactmath::{Angle, ExactAngle, Rational};
use crate::samplespace::{phase_rotation, sample, theta_count};

/// The six angles of a two-qubit state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoQubitParams {
    pub theta: [Angle; 3],
    pub phi: [ExactAngle; 3],
}

/// `γ_j²` and the phases `(0, χ1, χ2, χ3)` of the four outcomes `ab, a¬b, ¬ab, ¬a¬b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoQubitPrediction {
    pub probabilities: [Rational; 4],
    pub phases: [ExactAngle; 4],
}

impl TwoQubitParams {
    pub fn new(theta: [Angle; 3], phi: [ExactAngle; 3]) -> Self {
        TwoQubitParams { theta, phi }
    }

    pub fn real(theta: [Angle; 3]) -> Self {
        TwoQubitParams { theta, phi: [ExactAngle::zero(), ExactAngle::zero(), ExactAngle::zero()] }
    }

    fn half_sq(&self) -> Result<[(Rational, Rational); 3]> {
        let one = Rational::one();
        let f = |a: &Angle| {
            a.cos_half_sq()
                .map(|c| (c.clone(), &one - &c))
                .ok_or_else(|| Error::NotOnInvariantSet(format!("cos of {a} is irrational")))
        };
        Ok([f(&self.theta[0])?, f(&self.theta[1])?, f(&self.theta[2])?])
    }

    /// `γ0² … γ3²` from the closed-form products of half-angle cosines and sines.
    pub fn gammas_sq(&self) -> Result<[Rational; 4]> {
        let [(c1, s1), (c2, s2), (c3, s3)] = self.half_sq()?;
        Ok([&c1 * &c2, &c1 * &s2, &s1 * &c3, &s1 * &s3])
    }

    /// `χ1 = φ2`, `χ2 = φ1`, `χ3 = φ1 + φ3`.
    pub fn chis(&self) -> [ExactAngle; 3] {
        [self.phi[1].clone(), self.phi[0].clone(), &self.phi[0] + &self.phi[2]]
    }

    pub fn settings(&self) -> Vec<QubitSetting> {
        (0..3).map(|k| QubitSetting::new(self.theta[k].clone(), self.phi[k].clone())).collect()
    }
}

/// Predicted frequencies and phases, gated on describability at `N`.
pub fn two_qubit_predict(params: &TwoQubitParams, n_bits: u32) -> Result<TwoQubitPrediction> {
    for k in 0..3 {
        theta_count(n_bits, &params.theta[k])?;
        phase_rotation(n_bits, &params.phi[k])?;
    }
    let exact = params.settings().iter().map(QubitSetting::exact).collect::<Result<Vec<_>>>()?;
    correspondence_gate(&exact, n_bits)?;
    let [c1, c2, c3] = params.chis();
    Ok(TwoQubitPrediction { probabilities: params.gammas_sq()?, phases: [ExactAngle::zero(), c1, c2, c3] })
}

/// The aligned pair of rows for a two-qubit state.
pub fn two_qubit_sample(params: &TwoQubitParams, n_bits: u32) -> Result<MultiSample> {
    m_qubit_sample(n_bits, &params.settings())
}

/// Bell construction: `cos²(θ1/2) = 1/2`, `S_b'' = ¬S_b'`.
pub fn bell_sample(theta2: &Angle, n_bits: u32) -> Result<MultiSample> {
    let sa = sample(n_bits, &Angle::turns(1, 4), &ExactAngle::zero())?;
    let sb1 = sample(n_bits, theta2, &ExactAngle::zero())?;
    let sb2 = sb1.negate();
    compose_pair(&sa, &sb1, &sb2)
}

/// Frequency with which the two rows agree (`ab` or `¬a¬b`).
pub fn bell_agreement(ms: &MultiSample) -> Result<Rational> {
    let agree = ms.row(0).agreements(ms.row(1))?;
    Ok(Rational::new(agree, ms.row(0).len()))
}

/// Agreement minus disagreement frequency.
pub fn bell_corr(ms: &MultiSample) -> Result<Rational> {
    row_correlation(ms, 0, 1)
}
