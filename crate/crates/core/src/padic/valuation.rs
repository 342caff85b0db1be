use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::PadicInt;
use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// `ord_p(x)`: finite for `x ≠ 0`, `+∞` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Trial division; `p` values here are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) { Ok(()) } else { Err(Error::NotPrime(p)) }
}

fn ord_int(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `ord_p(a/b) = ord_p(a) - ord_p(b)` for `a/b` in lowest terms.
pub fn ord_p(x: &Rational, p: u64) -> Result<Valuation> {
    require_prime(p)?;
    if x.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let pb = BigInt::from(p);
    Ok(Valuation::Finite(ord_int(x.numer(), &pb) - ord_int(x.denom(), &pb)))
}

fn pow_p(p: u64, e: i64) -> Rational {
    Rational::from(p as i64).pow(-e as i32)
}

/// `|x|_p = p^{-ord_p(x)}`, zero for `x = 0`.
pub fn padic_norm(x: &Rational, p: u64) -> Result<Rational> {
    Ok(match ord_p(x, p)? {
        Valuation::Infinity => Rational::zero(),
        Valuation::Finite(v) => pow_p(p, v),
    })
}

/// `d_p(a, b) = |a - b|_p`.
pub fn padic_dist(a: &Rational, b: &Rational, p: u64) -> Result<Rational> {
    padic_norm(&(a - b), p)
}

/// Distances between a p-adic integer and a point outside `ℤ_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub p: u64,
    pub a: Rational,
    pub b: Rational,
    /// `|a - b|` in the ordinary absolute value.
    pub euclid_gap: Rational,
    /// `d_p(a, b)`, exact.
    pub padic_gap: Rational,
    /// `p`, the bound any point of `ℤ_p` satisfies against `b`.
    pub padic_gap_lower_bound: Rational,
}

/// Compare Euclidean and p-adic distance between `a ∈ ℤ_p` and `b_off` with
/// `ord_p(b_off) < 0`.
///
/// Both distances are taken in p-adic coordinates: `a` is the truncated integer value of
/// its digits. The p-adic gap is always at least `p` whatever the Euclidean gap.
pub fn euclid_padic_probe(a: &PadicInt, b_off: &Rational) -> Result<ProbeReport> {
    let p = a.prime();
    match ord_p(b_off, p)? {
        Valuation::Finite(v) if v < 0 => {}
        v => {
            return Err(Error::Precondition(format!(
                "probe point {b_off} has ord_{p} = {v}, must be negative"
            )))
        }
    }
    let av = Rational::from(a.value());
    let padic_gap = padic_dist(&av, b_off, p)?;
    Ok(ProbeReport {
        p,
        euclid_gap: (&av - b_off).abs(),
        padic_gap,
        padic_gap_lower_bound: Rational::from(p as i64),
        a: av,
        b: b_off.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn valuations() {
        assert_eq!(ord_p(&rat(8, 1), 2).unwrap(), Valuation::Finite(3));
        assert_eq!(ord_p(&rat(1, 2), 2).unwrap(), Valuation::Finite(-1));
        assert_eq!(ord_p(&rat(18, 5), 3).unwrap(), Valuation::Finite(2));
        assert_eq!(ord_p(&rat(0, 1), 7).unwrap(), Valuation::Infinity);
        assert_eq!(ord_p(&rat(-50, 3), 5).unwrap(), Valuation::Finite(2));
        assert_eq!(ord_p(&rat(1, 1), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(65537));
        assert!(!is_prime(4294967297));
    }

    #[test]
    fn two_adic_examples() {
        assert_eq!(padic_dist(&rat(7, 1), &rat(3, 1), 2).unwrap(), rat(1, 4));
        assert_eq!(padic_dist(&rat(15, 1), &rat(7, 1), 2).unwrap(), rat(1, 8));
        assert_eq!(padic_dist(&rat(5, 3), &rat(5, 3), 2).unwrap(), rat(0, 1));
    }

    #[test]
    fn probe_examples() {
        let one = PadicInt::from_u64(2, 1, 8).unwrap();
        let r = euclid_padic_probe(&one, &rat(1, 2)).unwrap();
        assert_eq!(r.padic_gap, rat(2, 1));
        assert_eq!(r.euclid_gap, rat(1, 2));
        let r = euclid_padic_probe(&one, &rat(5, 4)).unwrap();
        assert_eq!(r.padic_gap, rat(4, 1));
        let three = PadicInt::from_u64(5, 3, 4).unwrap();
        let r = euclid_padic_probe(&three, &rat(16, 5)).unwrap();
        assert_eq!(r.padic_gap, rat(5, 1));
        assert!(r.padic_gap >= r.padic_gap_lower_bound);
        assert!(euclid_padic_probe(&one, &rat(3, 1)).is_err());
    }
}
