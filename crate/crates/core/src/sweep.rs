//! Exhaustive parameter sweeps backing the amplitude law and the multi-qubit frequency
//! tables. Every sweep takes an [`Execution`] so the bench can compare both modes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{Angle, ExactAngle, Rational};
use crate::multiqubit::{
    amplitude_table, correspondence_gate, joint_counts, m_qubit_from_counts, QubitParam,
};
use crate::par::{self, Execution};
use crate::samplespace::{expand_counts, hilbert_shadow, sample, OrbitDescriptor, MAX_EXPLICIT_BITS};

/// Largest `N` the exhaustive sweeps accept.
pub const MAX_SWEEP_BITS: u32 = 12;

/// Cases visited and the first few failures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub name: String,
    pub n_bits: u32,
    pub cases: u64,
    /// Cases that passed the describability gates and were built.
    pub admissible: u64,
    pub failures: Vec<String>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(name: &str, n_bits: u32, results: Vec<(u64, u64, Option<String>)>) -> Self {
        let mut s = SweepSummary { name: name.into(), n_bits, ..Default::default() };
        for (cases, admissible, failure) in results {
            s.cases += cases;
            s.admissible += admissible;
            if let Some(f) = failure {
                if s.failures.len() < 16 {
                    s.failures.push(f);
                }
            }
        }
        s
    }
}

fn check_bits(n_bits: u32, max: u32) -> Result<()> {
    if !(3..=max).contains(&n_bits) {
        return Err(Error::ResourceLimit(format!("sweep needs 3 <= N <= {max}, got {n_bits}")));
    }
    Ok(())
}

/// Every `(a count, rotation)` pair at `N`: the constructed string has the requested count and
/// its shadow is `(count / 2^N, rotation / 2^{N-1})`.
pub fn amplitude_law_sweep(n_bits: u32, exec: Execution) -> Result<SweepSummary> {
    check_bits(n_bits, MAX_SWEEP_BITS)?;
    let len = 1u64 << n_bits;
    let half = len / 2;
    let results = par::filter_map_range(exec, 0..len + 1, |count| {
        let mut fail = None;
        for rot in 0..half {
            let s = match expand_counts(n_bits, count, rot) {
                Ok(s) => s,
                Err(e) => {
                    fail = Some(format!("count {count} rotation {rot}: {e}"));
                    break;
                }
            };
            let sh = match hilbert_shadow(&s) {
                Ok(sh) => sh,
                Err(e) => {
                    fail = Some(format!("count {count} rotation {rot}: {e}"));
                    break;
                }
            };
            let phase_ok = match &sh.phi_turns {
                None => count == 0 || count == len,
                Some(t) => t.to_rational() == Rational::new(rot, half),
            };
            if s.count_a() != count || sh.cos_half_sq.to_rational() != Rational::new(count, len) || !phase_ok {
                fail = Some(format!("count {count} rotation {rot}: got {} a labels, shadow {sh:?}", s.count_a()));
                break;
            }
        }
        Some((half, half, fail))
    });
    Ok(SweepSummary::collect("amplitude_law", n_bits, results))
}

/// The gated path: `sample(N, θ, φ)` over every describable `cos θ = k / 2^{N-1}` and every
/// `φ = j / 2^{N-1}` turns, with `fraction = cos²(θ/2)` and the descriptor of the fast path.
pub fn gated_sample_sweep(n_bits: u32, exec: Execution) -> Result<SweepSummary> {
    check_bits(n_bits, MAX_SWEEP_BITS)?;
    let half = 1u64 << (n_bits - 1);
    let results = par::filter_map_range(exec, 0..2 * half + 1, |k| {
        let theta = Angle::from_cos(Rational::new(k as i64 - half as i64, half as i64));
        let want = theta.cos_half_sq().expect("rational cosine");
        for j in 0..half {
            let phi = ExactAngle::from_turns(Rational::new(j, half));
            let ok = sample(n_bits, &theta, &phi).and_then(|s| {
                let fast = OrbitDescriptor::sample(n_bits, k, j)?;
                Ok(s.fraction().to_rational() == want && s.descriptor() == Some(&fast))
            });
            if !matches!(ok, Ok(true)) {
                return Some((half, 0, Some(format!("cos θ = {} φ = {phi}: {ok:?}", theta))));
            }
        }
        Some((half, half, None))
    });
    Ok(SweepSummary::collect("gated_sample", n_bits, results))
}

/// `k1 k2 / 2^N` style products: `(count, 2^N - count)` pairs for the four joint outcomes.
fn predicted_counts(n_bits: u32, k: [u64; 3]) -> Option<[u64; 4]> {
    let len = 1u64 << n_bits;
    let p = [k[0] * k[1], k[0] * (len - k[1]), (len - k[0]) * k[2], (len - k[0]) * (len - k[2])];
    if p.iter().all(|x| x % len == 0) {
        Some(p.map(|x| x / len))
    } else {
        None
    }
}

/// All admissible real two-qubit settings at `N`: `cos²(θ_j/2) = k_j / 2^N` with every joint
/// probability describable. The joint counts must equal the `γ²` table exactly.
pub fn two_qubit_sweep(n_bits: u32, exec: Execution) -> Result<SweepSummary> {
    check_bits(n_bits, 10)?;
    let len = 1u64 << n_bits;
    let results = par::filter_map_range(exec, 0..len + 1, |k1| {
        // k1·k2 and (2^N - k1)·k3 must be multiples of 2^N.
        let step = |k: u64| if k == 0 { len } else { len >> k.trailing_zeros().min(n_bits) };
        let (s2, s3) = (if k1 == 0 { 1 } else { step(k1) }, if k1 == len { 1 } else { step(len - k1) });
        let mut cases = 0;
        for k2 in (0..=len).step_by(s2 as usize) {
            for k3 in (0..=len).step_by(s3 as usize) {
                cases += 1;
                let want = predicted_counts(n_bits, [k1, k2, k3]).expect("admissible by construction");
                let got = m_qubit_from_counts(n_bits, &[k1, k2, k3], &[0, 0, 0]).map(|ms| joint_counts(&ms).counts);
                if got.as_deref() != Ok(&want[..]) {
                    return Some((cases, cases - 1, Some(format!("k = ({k1}, {k2}, {k3}): {got:?} vs {want:?}"))));
                }
            }
        }
        Some((cases, cases, None))
    });
    Ok(SweepSummary::collect("two_qubit", n_bits, results))
}

/// Every `(k1, k2, k3)` at `N`, gated or not: construction succeeds exactly when the
/// correspondence gate passes.
pub fn two_qubit_gate_sweep(n_bits: u32, exec: Execution) -> Result<SweepSummary> {
    check_bits(n_bits, 6)?;
    let len = 1u64 << n_bits;
    let results = par::filter_map_range(exec, 0..len + 1, |k1| {
        let mut admissible = 0;
        for k2 in 0..=len {
            for k3 in 0..=len {
                let params: Vec<QubitParam> = [k1, k2, k3]
                    .iter()
                    .map(|&k| QubitParam { cos_half_sq: Rational::new(k, len), phi: ExactAngle::zero() })
                    .collect();
                let gate = correspondence_gate(&params, n_bits).is_ok();
                let built = m_qubit_from_counts(n_bits, &[k1, k2, k3], &[0, 0, 0]).is_ok();
                if gate != built || gate != predicted_counts(n_bits, [k1, k2, k3]).is_some() {
                    return Some(((len + 1) * (len + 1), admissible, Some(format!("k = ({k1}, {k2}, {k3})"))));
                }
                admissible += gate as u64;
            }
        }
        Some(((len + 1) * (len + 1), admissible, None))
    });
    Ok(SweepSummary::collect("two_qubit_gate", n_bits, results))
}

/// Three qubits, seven settings each with `cos²(θ/2) ∈ {0, 1/4, 1/2, 3/4, 1}` and zero phase:
/// the gate decides construction, and built stacks reproduce the expander's table.
pub fn three_qubit_quarter_sweep(n_bits: u32, exec: Execution) -> Result<SweepSummary> {
    check_bits(n_bits, MAX_EXPLICIT_BITS.min(MAX_SWEEP_BITS))?;
    let len = 1u64 << n_bits;
    let combos = 5u64.pow(7);
    let results = par::filter_map_range(exec, 0..combos, |code| {
        let mut c = code;
        let quarters: Vec<u64> = (0..7)
            .map(|_| {
                let q = c % 5;
                c /= 5;
                q
            })
            .collect();
        let params: Vec<QubitParam> = quarters
            .iter()
            .map(|&q| QubitParam { cos_half_sq: Rational::new(q, 4), phi: ExactAngle::zero() })
            .collect();
        let counts: Vec<u64> = quarters.iter().map(|&q| q * len / 4).collect();
        let gate = correspondence_gate(&params, n_bits).is_ok();
        let built = m_qubit_from_counts(n_bits, &counts, &[0; 7]);
        let fail = match (gate, built) {
            (true, Ok(ms)) => {
                let table = joint_counts(&ms);
                let want = amplitude_table(&params).expect("seven parameters");
                (0..8)
                    .find(|&o| table.frequency(o) != want[o].0)
                    .map(|o| format!("cos² = {quarters:?}/4: outcome {o:03b}"))
            }
            (false, Err(e)) if e.is_exclusion() => None,
            (g, b) => Some(format!("cos² = {quarters:?}/4: gate {g}, build {:?}", b.map(|_| ()))),
        };
        Some((1, gate as u64, fail))
    });
    Ok(SweepSummary::collect("three_qubit_quarter", n_bits, results))
}
