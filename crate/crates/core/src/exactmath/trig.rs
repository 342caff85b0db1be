//! Exact cosines of rational-turn angles.
//!
//! For `φ/π ∈ ℚ`, `cos φ` is rational only for `cos φ ∈ {0, ±1/2, ±1}`. The decision is
//! made from the reduced denominator of `φ/2π`, never from floating point.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{ExactAngle, Rational};

/// Result of an exact cosine evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CosValue {
    Rational(Rational),
    Irrational,
}

impl CosValue {
    pub fn rational(&self) -> Option<&Rational> {
        match self {
            CosValue::Rational(r) => Some(r),
            CosValue::Irrational => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, CosValue::Rational(_))
    }
}

/// Exact `cos(2π·turns)`.
///
/// With `turns = m/n` in lowest terms the value is rational exactly when `n ∈ {1, 2, 3, 4, 6}`.
pub fn cos_exact(angle: &ExactAngle) -> CosValue {
    let t = angle.turns();
    let den = t.denom().to_u64();
    let num = t.numer();
    // Numerator in [0, den) because turns are normalized.
    let value = |n: i64, d: i64| CosValue::Rational(Rational::new(n, d));
    match den {
        Some(1) => value(1, 1),
        Some(2) => value(-1, 1),
        Some(4) => value(0, 1),
        Some(3) => value(-1, 2),
        Some(6) => {
            if *num == BigInt::from(1) || *num == BigInt::from(5) {
                value(1, 2)
            } else {
                unreachable!("lowest terms")
            }
        }
        _ => CosValue::Irrational,
    }
}

/// Exact `sin(2π·turns)`, via `sin x = cos(x - π/2)`.
pub fn sin_exact(angle: &ExactAngle) -> CosValue {
    cos_exact(&(angle - &ExactAngle::turns_ratio(1, 4)))
}

/// The orbit of `turns` under doubling mod 1, in the order visited.
///
/// For `turns = m/n` the orbit has at most `n` points, which bounds the denominators of
/// `2cos(2^k φ)`. A rational `2cos φ = a/b` with `|b| > 1` would force those denominators
/// to grow without bound; this finite orbit is the witness that they cannot.
pub fn doubling_orbit(angle: &ExactAngle) -> Vec<ExactAngle> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut cur = angle.clone();
    while seen.insert(cur.clone()) {
        out.push(cur.clone());
        cur = cur.scale(2);
    }
    out
}

/// One step of the denominator growth in the rational-cosine argument:
/// `2cos 2φ = (2cos φ)² - 2`.
pub fn double_twice_cos(two_cos: &Rational) -> Rational {
    two_cos * two_cos - Rational::from(2)
}

/// A rational (cos, sin) pair, closed under angle addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigPair {
    pub cos: Rational,
    pub sin: Rational,
}

impl TrigPair {
    pub fn of_turns(angle: &ExactAngle) -> Option<TrigPair> {
        Some(TrigPair {
            cos: cos_exact(angle).rational()?.clone(),
            sin: sin_exact(angle).rational()?.clone(),
        })
    }

    /// Angle in `[0, π]` with cosine `c`, when its sine is rational too.
    pub fn of_cos(c: &Rational) -> Option<TrigPair> {
        let s = (Rational::one() - c * c).sqrt_exact()?;
        Some(TrigPair { cos: c.clone(), sin: s })
    }

    pub fn add(&self, o: &TrigPair) -> TrigPair {
        TrigPair {
            cos: &self.cos * &o.cos - &self.sin * &o.sin,
            sin: &self.sin * &o.cos + &self.cos * &o.sin,
        }
    }

    pub fn neg(&self) -> TrigPair {
        TrigPair { cos: self.cos.clone(), sin: -&self.sin }
    }

    pub fn sub(&self, o: &TrigPair) -> TrigPair {
        self.add(&o.neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    fn cos_of(n: i64, d: i64) -> CosValue {
        cos_exact(&ExactAngle::turns_ratio(n, d))
    }

    #[test]
    fn exceptional_values() {
        assert_eq!(cos_of(1, 6), CosValue::Rational(rat(1, 2)));
        assert_eq!(cos_of(0, 1), CosValue::Rational(rat(1, 1)));
        assert_eq!(cos_of(1, 3), CosValue::Rational(rat(-1, 2)));
        assert_eq!(cos_of(1, 4), CosValue::Rational(rat(0, 1)));
        assert_eq!(cos_of(3, 4), CosValue::Rational(rat(0, 1)));
        assert_eq!(cos_of(1, 2), CosValue::Rational(rat(-1, 1)));
        assert_eq!(cos_of(5, 6), CosValue::Rational(rat(1, 2)));
        assert_eq!(cos_of(1, 8), CosValue::Irrational);
        assert_eq!(cos_of(1, 5), CosValue::Irrational);
        assert_eq!(cos_of(1, 12), CosValue::Irrational);
    }

    #[test]
    fn sines() {
        assert_eq!(sin_exact(&ExactAngle::turns_ratio(1, 4)), CosValue::Rational(rat(1, 1)));
        assert_eq!(sin_exact(&ExactAngle::turns_ratio(1, 12)), CosValue::Rational(rat(1, 2)));
        assert_eq!(sin_exact(&ExactAngle::turns_ratio(1, 6)), CosValue::Irrational);
    }

    #[test]
    fn doubling_orbit_is_bounded_by_denominator() {
        for n in 1..40i64 {
            for m in 0..n {
                let orbit = doubling_orbit(&ExactAngle::turns_ratio(m, n));
                assert!(orbit.len() as i64 <= n);
            }
        }
    }

    #[test]
    fn non_integer_two_cos_denominators_grow() {
        // 2cos φ = 3/2 would give denominators 2, 4, 16, 256, ... under doubling.
        let mut x = rat(3, 2);
        let mut last = BigInt::from(1);
        for _ in 0..5 {
            assert!(x.denom() > &last);
            last = x.denom().clone();
            x = double_twice_cos(&x);
        }
    }

    #[test]
    fn trig_pair_addition() {
        let a = TrigPair::of_cos(&rat(3, 5)).unwrap();
        let b = TrigPair::of_cos(&rat(4, 5)).unwrap();
        let s = a.add(&b);
        assert_eq!(s.cos, rat(0, 1));
        assert_eq!(s.sin, rat(1, 1));
        assert!(TrigPair::of_cos(&rat(1, 2)).is_none());
    }
}
