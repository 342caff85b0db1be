//! High-precision floating point for oracles and display values.
//!
//! Nothing in the exact model depends on this module; it backs nearest-angle
//! substitution, PBR evaluation off the rational fast path, and test oracles.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::Rational;

/// Default working precision in bits. Rounded up to whole 64-bit words by the backend.
pub const ORACLE_BITS: usize = 256;

/// A precision context: bit precision, rounding mode and the constants cache.
pub struct HighPrecision {
    prec: usize,
    rm: RoundingMode,
    cc: Consts,
}

impl std::fmt::Debug for HighPrecision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HighPrecision").field("prec", &self.prec).finish()
    }
}

impl Default for HighPrecision {
    fn default() -> Self {
        HighPrecision::new(ORACLE_BITS)
    }
}

impl HighPrecision {
    pub fn new(bits: usize) -> Self {
        HighPrecision {
            prec: bits,
            rm: RoundingMode::ToEven,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn int(&mut self, n: &BigInt) -> BigFloat {
        if let Ok(v) = i64::try_from(n) {
            return BigFloat::from_i64(v, self.prec);
        }
        BigFloat::parse(&n.to_string(), Radix::Dec, self.prec, self.rm, &mut self.cc)
    }

    pub fn small(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.prec)
    }

    pub fn rational(&mut self, r: &Rational) -> BigFloat {
        let n = self.int(r.numer());
        let d = self.int(r.denom());
        self.div(&n, &d)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, self.rm)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, self.rm)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, self.rm)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, self.rm)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, self.rm)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.prec, self.rm, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.prec, self.rm, &mut self.cc)
    }

    pub fn acos(&mut self, a: &BigFloat) -> BigFloat {
        a.acos(self.prec, self.rm, &mut self.cc)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, self.rm)
    }

    /// `2π · turns`.
    pub fn turns_to_radians(&mut self, turns: &Rational) -> BigFloat {
        let t = self.rational(turns);
        let pi = self.pi();
        let two_pi = self.mul(&pi, &self.small(2));
        self.mul(&two_pi, &t)
    }

    /// `radians / 2π`.
    pub fn radians_to_turns(&mut self, x: &BigFloat) -> BigFloat {
        let pi = self.pi();
        let two_pi = self.mul(&pi, &self.small(2));
        self.div(x, &two_pi)
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(&self, k: i32) -> BigFloat {
        let two = self.small(2);
        let p = two.powi(k.unsigned_abs() as usize, self.prec, self.rm);
        if k >= 0 { p } else { self.div(&self.small(1), &p) }
    }

    pub fn abs(&self, a: &BigFloat) -> BigFloat {
        a.abs()
    }

    /// `|a - b| < bound`.
    pub fn close(&self, a: &BigFloat, b: &BigFloat, bound: &BigFloat) -> bool {
        let d = self.sub(a, b).abs();
        matches!(d.cmp(bound), Some(c) if c < 0)
    }

    pub fn less(&self, a: &BigFloat, b: &BigFloat) -> bool {
        matches!(a.cmp(b), Some(c) if c < 0)
    }

    pub fn is_negative(&self, a: &BigFloat) -> bool {
        a.is_negative()
    }

    /// Exact rational value of a finite float.
    pub fn to_rational(&self, a: &BigFloat) -> Rational {
        if a.is_zero() {
            return Rational::zero();
        }
        let (words, _bits, sign, exp, _) = a.as_raw_parts().expect("finite value");
        let mut mant = BigUint::zero();
        for w in words.iter().rev() {
            mant = (mant << 64usize) | BigUint::from(*w);
        }
        let shift = exp as i64 - 64 * words.len() as i64;
        let mut r = Rational::from(mant);
        if shift >= 0 {
            r = r * Rational::from_integer(BigInt::from(1) << shift as usize);
        } else {
            r = r / Rational::from_integer(BigInt::from(1) << (-shift) as usize);
        }
        if sign == Sign::Neg { -r } else { r }
    }

    pub fn to_f64(&self, a: &BigFloat) -> f64 {
        self.to_rational(a).to_f64()
    }

    /// Nearest integer (ties away from zero).
    pub fn round_to_int(&self, a: &BigFloat) -> BigInt {
        let half = Rational::new(1, 2);
        let r = self.to_rational(a);
        if r.is_negative() {
            -(-r + half).floor()
        } else {
            (r + half).floor()
        }
    }
}
