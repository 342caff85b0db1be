use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{is_describable, ExactAngle, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfAngle {
    Cos,
    Sin,
}

/// Symbolic amplitude of one outcome: a product of `cos(θ_k/2)` or `sin(θ_k/2)` factors
/// times `e^{i Σ φ_k}` over the listed phase indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmplitudeTerm {
    pub outcome: usize,
    pub factors: Vec<(usize, HalfAngle)>,
    pub phases: Vec<usize>,
}

/// Exact single-qubit data: `cos²(θ/2)` and `φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QubitParam {
    pub cos_half_sq: Rational,
    pub phi: ExactAngle,
}

impl AmplitudeTerm {
    pub fn probability(&self, params: &[QubitParam]) -> Rational {
        self.factors.iter().fold(Rational::one(), |acc, &(k, h)| {
            let c = &params[k].cos_half_sq;
            match h {
                HalfAngle::Cos => acc * c,
                HalfAngle::Sin => acc * (Rational::one() - c),
            }
        })
    }

    pub fn phase(&self, params: &[QubitParam]) -> ExactAngle {
        self.phases.iter().fold(ExactAngle::zero(), |acc, &k| &acc + &params[k].phi)
    }
}

/// Number of angle pairs an `m`-qubit state uses: `2^m - 1`.
pub fn param_count(m: usize) -> usize {
    (1 << m) - 1
}

/// Qubit count for a parameter list of length `2^m - 1`.
pub fn qubits_for(params: usize) -> Result<usize> {
    let m = (params + 1).trailing_zeros() as usize;
    if params == 0 || param_count(m) != params {
        return Err(Error::Precondition(format!("{params} parameters is not of the form 2^m - 1")));
    }
    Ok(m)
}

/// Expand the recursion: head index `base`, left block `base+1 .. base+2^{m-1}`, right
/// block `base+2^{m-1} .. base+2^m-1`.
fn expand_from(m: usize, base: usize) -> Vec<AmplitudeTerm> {
    if m == 1 {
        return vec![
            AmplitudeTerm { outcome: 0, factors: vec![(base, HalfAngle::Cos)], phases: vec![] },
            AmplitudeTerm { outcome: 1, factors: vec![(base, HalfAngle::Sin)], phases: vec![base] },
        ];
    }
    let half = 1 << (m - 1);
    let left = expand_from(m - 1, base + 1);
    let right = expand_from(m - 1, base + half);
    let mut out = Vec::with_capacity(2 * half);
    for t in left {
        let mut factors = vec![(base, HalfAngle::Cos)];
        factors.extend(t.factors);
        out.push(AmplitudeTerm { outcome: t.outcome, factors, phases: t.phases });
    }
    for t in right {
        let mut factors = vec![(base, HalfAngle::Sin)];
        factors.extend(t.factors);
        let mut phases = vec![base];
        phases.extend(t.phases);
        out.push(AmplitudeTerm { outcome: half | t.outcome, factors, phases });
    }
    out
}

/// All `2^m` amplitude terms, indexed by outcome.
pub fn expand_amplitudes(m: usize) -> Vec<AmplitudeTerm> {
    assert!(m >= 1, "at least one qubit");
    expand_from(m, 0)
}

/// Exact outcome probabilities and phases.
pub fn amplitude_table(params: &[QubitParam]) -> Result<Vec<(Rational, ExactAngle)>> {
    let m = qubits_for(params.len())?;
    Ok(expand_amplitudes(m).iter().map(|t| (t.probability(params), t.phase(params))).collect())
}

/// Joint probabilities times `2^{Nm}`, when every `cos²(θ/2)` is `k / 2^N` and the products
/// fit in 128 bits.
fn integer_probabilities(params: &[QubitParam], n_bits: u32, m: usize) -> Option<Vec<u128>> {
    if n_bits as usize * m >= 128 {
        return None;
    }
    let full = 1u128 << n_bits;
    let scale = Rational::from_integer(BigInt::from(full));
    let ks = params
        .iter()
        .map(|p| {
            let x = &p.cos_half_sq * &scale;
            x.is_integer().then(|| x.numer().to_u128()).flatten().filter(|&k| k <= full)
        })
        .collect::<Option<Vec<_>>>()?;
    let terms = expand_amplitudes(m);
    Some(
        terms
            .iter()
            .map(|t| {
                t.factors.iter().fold(1u128, |acc, &(j, h)| {
                    acc * match h {
                        HalfAngle::Cos => ks[j],
                        HalfAngle::Sin => full - ks[j],
                    }
                })
            })
            .collect(),
    )
}

/// The bit-string correspondence exists at `N` iff, at every level of the recursion,
/// every joint probability is describable by `N` bits.
pub fn correspondence_gate(params: &[QubitParam], n_bits: u32) -> Result<()> {
    let m = qubits_for(params.len())?;
    for p in params {
        if !is_describable(&p.cos_half_sq, n_bits) {
            return Err(Error::NotOnInvariantSet(format!(
                "cos²(θ/2) = {} is not describable by {n_bits} bits",
                p.cos_half_sq
            )));
        }
    }
    if m > 1 {
        let half = 1 << (m - 1);
        correspondence_gate(&params[1..half], n_bits)?;
        correspondence_gate(&params[half..], n_bits)?;
    }
    if let Some(numers) = integer_probabilities(params, n_bits, m) {
        let need = n_bits * (m as u32 - 1);
        return match numers.iter().position(|&v| v != 0 && v.trailing_zeros() < need) {
            None => Ok(()),
            Some(o) => {
                let p = Rational::new(numers[o], BigInt::from(1) << (n_bits as usize * m));
                Err(Error::NotOnInvariantSet(format!(
                    "joint probability {p} of outcome {o:0m$b} is not describable by {n_bits} bits"
                )))
            }
        };
    }
    for (o, (p, _)) in amplitude_table(params)?.iter().enumerate() {
        if !is_describable(p, n_bits) {
            return Err(Error::NotOnInvariantSet(format!(
                "joint probability {p} of outcome {o:0m$b} is not describable by {n_bits} bits"
            )));
        }
    }
    Ok(())
}
