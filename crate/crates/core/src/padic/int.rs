use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::valuation::require_prime;
use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// A p-adic integer truncated to `K` digits: `Σ_{k<K} a_k p^k`.
///
/// Results that depend on digits are K-truncations; equality only looks at the
/// precision both sides share.
#[derive(Clone, Serialize)]
pub struct PadicInt {
    p: u64,
    digits: Vec<u64>,
}

impl PadicInt {
    pub fn new(p: u64, digits: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if digits.is_empty() {
            return Err(Error::Precondition("a p-adic integer needs at least one digit".into()));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::Precondition(format!("digit {d} out of range for p = {p}")));
        }
        Ok(PadicInt { p, digits })
    }

    /// Digits of an integer, negative ones through `p^K`-complement.
    pub fn from_integer(p: u64, n: &BigInt, precision: usize) -> Result<Self> {
        let pb = BigInt::from(p);
        let modulus = num_traits::pow(pb.clone(), precision);
        let mut v = n.mod_floor(&modulus);
        let mut digits = Vec::with_capacity(precision);
        for _ in 0..precision {
            let (q, r) = v.div_rem(&pb);
            digits.push(u64::try_from(&r).expect("digit below p"));
            v = q;
        }
        PadicInt::new(p, digits)
    }

    pub fn from_u64(p: u64, n: u64, precision: usize) -> Result<Self> {
        PadicInt::from_integer(p, &BigInt::from(n), precision)
    }

    /// Expansion of a rational with `ord_p(x) ≥ 0`, using `b^{-1} mod p^K`.
    pub fn from_rational(p: u64, x: &Rational, precision: usize) -> Result<Self> {
        require_prime(p)?;
        let pb = BigInt::from(p);
        let modulus = num_traits::pow(pb, precision);
        let inv = mod_inverse(x.denom(), &modulus).ok_or_else(|| {
            Error::Precondition(format!("{x} is not a {p}-adic integer"))
        })?;
        PadicInt::from_integer(p, &(x.numer() * inv), precision)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// `Σ a_k p^k` over the retained digits.
    pub fn value(&self) -> BigInt {
        let pb = BigInt::from(self.p);
        self.digits.iter().rev().fold(BigInt::zero(), |acc, &d| acc * &pb + d)
    }

    /// Number of leading digits shared with `other`, capped at the common precision.
    pub fn shared_prefix(&self, other: &PadicInt) -> usize {
        self.digits.iter().zip(&other.digits).take_while(|(a, b)| a == b).count()
    }

    /// `p^{-ℓ}` for `ℓ` shared leading digits; zero when they agree to common precision.
    pub fn dist(&self, other: &PadicInt) -> Result<Rational> {
        if self.p != other.p {
            return Err(Error::Precondition(format!("mixed primes {} and {}", self.p, other.p)));
        }
        let l = self.shared_prefix(other);
        if l == self.precision().min(other.precision()) {
            return Ok(Rational::zero());
        }
        Ok(Rational::from(self.p as i64).pow(-(l as i32)))
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if e.gcd.is_one() { Some(e.x.mod_floor(m)) } else { None }
}

impl PartialEq for PadicInt {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.shared_prefix(other) == self.precision().min(other.precision())
    }
}

impl fmt::Debug for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicInt(p={}, digits={:?})", self.p, self.digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn digits_of_integers() {
        let x = PadicInt::from_u64(2, 7, 5).unwrap();
        assert_eq!(x.digits(), &[1, 1, 1, 0, 0]);
        assert_eq!(x.value(), BigInt::from(7));
        let m1 = PadicInt::from_integer(3, &BigInt::from(-1), 4).unwrap();
        assert_eq!(m1.digits(), &[2, 2, 2, 2]);
    }

    #[test]
    fn rational_expansion() {
        // -1/3 in Z_2 is ...0101 1 with digits 1,1,0,1,0,1...
        let x = PadicInt::from_rational(2, &rat(1, 3), 6).unwrap();
        assert_eq!(x.digits(), &[1, 1, 0, 1, 0, 1]);
        assert!(PadicInt::from_rational(2, &rat(1, 2), 4).is_err());
    }

    #[test]
    fn validation_and_equality() {
        assert!(PadicInt::new(2, vec![2]).is_err());
        assert!(PadicInt::new(4, vec![1]).is_err());
        assert!(PadicInt::new(3, vec![]).is_err());
        let a = PadicInt::new(3, vec![1, 2, 0]).unwrap();
        let b = PadicInt::new(3, vec![1, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dist(&b).unwrap(), rat(0, 1));
        let c = PadicInt::new(3, vec![1, 0, 0]).unwrap();
        assert_eq!(a.dist(&c).unwrap(), rat(1, 3));
    }
}
