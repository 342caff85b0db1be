//! Describability by `N` bits and the obstructions that keep sums of settings off the grid.

use serde::Serialize;

use super::rational::exact_isqrt_u128;
use super::{Rational, TrigPair};
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Largest `k` accepted by [`pythagorean_solutions`].
pub const PYTHAGOREAN_MAX_K: u32 = 24;

/// True iff `x = n / 2^N` for some integer `n`.
pub fn is_describable(x: &Rational, n_bits: u32) -> bool {
    matches!(x.dyadic_exponent(), Some(k) if k <= n_bits)
}

/// All `(a, b)` with `a, b ≥ 1` and `a² + b² = 4^k`.
///
/// There are none for any `k`; the scan is an executable witness.
pub fn pythagorean_solutions(k: u32) -> Result<Vec<(u64, u64)>> {
    pythagorean_solutions_with(k, Execution::default())
}

pub fn pythagorean_solutions_with(k: u32, exec: Execution) -> Result<Vec<(u64, u64)>> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if k > PYTHAGOREAN_MAX_K {
        return Err(Error::ResourceLimit(format!(
            "pythagorean scan limited to k <= {PYTHAGOREAN_MAX_K}, got {k}"
        )));
    }
    let c = 1u64 << k;
    let c2 = (c as u128) * (c as u128);
    let mut found = par::filter_map_range(exec, 1..c, |a| {
        let rest = c2 - (a as u128) * (a as u128);
        exact_isqrt_u128(rest).filter(|&b| b >= 1).map(|b| (a, b as u64))
    });
    found.sort_unstable();
    Ok(found)
}

/// Why a summed setting is excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionReason {
    /// `sin A · sin B` is irrational, so `cos(A + B)` is irrational.
    IrrationalSine,
    /// The sine product is rational but `cos(A + B)` is still not `n / 2^N`: the individual
    /// sines are not describable since `n₁² + n₃² = 4^N` has no non-zero solutions.
    PythagoreanObstruction,
}

/// Verdict on whether a summed angle stays describable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum SumVerdict {
    BothAdmissible { sum_cos: Rational },
    SumExcluded { reason: ExclusionReason },
}

impl SumVerdict {
    pub fn is_excluded(&self) -> bool {
        matches!(self, SumVerdict::SumExcluded { .. })
    }

    pub fn reason(&self) -> Option<ExclusionReason> {
        match self {
            SumVerdict::SumExcluded { reason } => Some(*reason),
            SumVerdict::BothAdmissible { .. } => None,
        }
    }
}

/// Decide whether `cos(A + B)` is describable by `N` bits given describable `cos A`, `cos B`,
/// with `A, B ∈ [0, π]` (non-negative sines).
pub fn simultaneous_describability(
    cos_a: &Rational,
    cos_b: &Rational,
    n_bits: u32,
) -> Result<SumVerdict> {
    sum_verdict(cos_a, cos_b, true, n_bits)
}

/// As [`simultaneous_describability`], with `same_sign` giving whether `sin A` and `sin B`
/// share a sign (false when one of the angles is taken negative).
pub fn sum_verdict(
    cos_a: &Rational,
    cos_b: &Rational,
    same_sign: bool,
    n_bits: u32,
) -> Result<SumVerdict> {
    for c in [cos_a, cos_b] {
        if c < &-1 || c > &1 {
            return Err(Error::Precondition(format!("cosine {c} outside [-1, 1]")));
        }
        if !is_describable(c, n_bits) {
            return Err(Error::Precondition(format!("cosine {c} is not describable by {n_bits} bits")));
        }
    }
    let one = Rational::one();
    let sin_sq_a = &one - cos_a * cos_a;
    let sin_sq_b = &one - cos_b * cos_b;
    let product = match (&sin_sq_a * &sin_sq_b).sqrt_exact() {
        Some(p) => p,
        None => return Ok(SumVerdict::SumExcluded { reason: ExclusionReason::IrrationalSine }),
    };
    let sin_term = if same_sign { product } else { -product };
    let sum_cos = cos_a * cos_b - sin_term;
    if is_describable(&sum_cos, n_bits) {
        Ok(SumVerdict::BothAdmissible { sum_cos })
    } else {
        Ok(SumVerdict::SumExcluded { reason: ExclusionReason::PythagoreanObstruction })
    }
}

/// Whether a describable non-trivial cosine has a describable sine. Always false for
/// `cos ∉ {0, ±1}`; exposed for tests of the obstruction.
pub fn sine_describable(cos: &Rational, n_bits: u32) -> bool {
    TrigPair::of_cos(cos).is_some_and(|p| is_describable(&p.sin, n_bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    #[test]
    fn describability_examples() {
        assert!(is_describable(&rat(3, 8), 3));
        assert!(!is_describable(&rat(3, 8), 2));
        for n in 1..20 {
            assert!(!is_describable(&rat(1, 3), n));
        }
        assert!(is_describable(&rat(-5, 1), 1));
    }

    #[test]
    fn phase_turns_gate() {
        // φ/2π = m/2^k passes the phase gate at N exactly when k <= N - 1.
        let x = rat(5, 16);
        assert!(is_describable(&x, 5 - 1));
        assert!(!is_describable(&x, 4 - 1));
    }

    #[test]
    fn pythagorean_small() {
        assert_eq!(pythagorean_solutions(1).unwrap(), vec![]);
        assert_eq!(pythagorean_solutions(4).unwrap(), vec![]);
        assert!(pythagorean_solutions(0).is_err());
        assert!(matches!(pythagorean_solutions(25), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn sum_excluded_by_irrational_sine() {
        let v = simultaneous_describability(&rat(3, 4), &rat(1, 2), 2).unwrap();
        assert_eq!(v, SumVerdict::SumExcluded { reason: ExclusionReason::IrrationalSine });
    }

    #[test]
    fn degenerate_same_setting() {
        let v = simultaneous_describability(&rat(1, 1), &rat(5, 8), 3).unwrap();
        assert_eq!(v, SumVerdict::BothAdmissible { sum_cos: rat(5, 8) });
        let v = simultaneous_describability(&rat(-1, 1), &rat(5, 8), 3).unwrap();
        assert_eq!(v, SumVerdict::BothAdmissible { sum_cos: rat(-5, 8) });
    }

    #[test]
    fn functionally_related_angles() {
        // A = B = 60°: sines are irrational but their product is not.
        let v = simultaneous_describability(&rat(1, 2), &rat(1, 2), 1).unwrap();
        assert_eq!(v, SumVerdict::BothAdmissible { sum_cos: rat(-1, 2) });
        // cos A = cos B = 3/4: cos(A+B) = 1/8 which needs 3 bits.
        let v = simultaneous_describability(&rat(3, 4), &rat(3, 4), 2).unwrap();
        assert_eq!(v, SumVerdict::SumExcluded { reason: ExclusionReason::PythagoreanObstruction });
        let v = simultaneous_describability(&rat(3, 4), &rat(3, 4), 3).unwrap();
        assert_eq!(v, SumVerdict::BothAdmissible { sum_cos: rat(1, 8) });
    }

    #[test]
    fn rejects_non_describable_inputs() {
        assert!(matches!(
            simultaneous_describability(&rat(1, 3), &rat(1, 2), 8),
            Err(Error::Precondition(_))
        ));
        assert!(simultaneous_describability(&rat(3, 8), &rat(1, 2), 2).is_err());
    }

    #[test]
    fn describable_sines_never_accompany_describable_cosines() {
        for n_bits in 1..=10u32 {
            let den = 1i64 << n_bits;
            for n in 1..den {
                assert!(!sine_describable(&rat(n, den), n_bits), "{n}/{den}");
            }
        }
    }
}
