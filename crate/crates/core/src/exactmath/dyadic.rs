use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::Rational;

/// A dyadic rational `n / 2^k` in canonical form: `n` odd, or `n = 0` and `k = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    n: BigInt,
    k: u32,
}

impl Dyadic {
    pub fn new(n: impl Into<BigInt>, k: u32) -> Self {
        let mut n = n.into();
        let mut k = k;
        if n.is_zero() {
            return Dyadic { n, k: 0 };
        }
        if let Some(tz) = n.trailing_zeros() {
            let shift = (tz as u32).min(k);
            n >>= shift as usize;
            k -= shift;
        }
        Dyadic { n, k }
    }

    pub fn zero() -> Self {
        Dyadic { n: BigInt::zero(), k: 0 }
    }

    pub fn one() -> Self {
        Dyadic { n: BigInt::one(), k: 0 }
    }

    pub fn numer(&self) -> &BigInt {
        &self.n
    }

    /// Exponent of the denominator `2^k`.
    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.n.clone(), BigInt::one() << self.k as usize)
    }

    /// Exact conversion; `None` unless the denominator is a power of two.
    pub fn from_rational(r: &Rational) -> Option<Self> {
        let k = r.dyadic_exponent()?;
        Some(Dyadic::new(r.numer().clone(), k))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64()
    }
}

impl From<&Dyadic> for Rational {
    fn from(d: &Dyadic) -> Rational {
        d.to_rational()
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_rational(), f)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.n, self.k)
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    #[test]
    fn canonical_form() {
        let d = Dyadic::new(12, 5);
        assert_eq!(d.numer(), &BigInt::from(3));
        assert_eq!(d.exponent(), 3);
        assert_eq!(Dyadic::new(0, 9).exponent(), 0);
        assert_eq!(Dyadic::new(8, 2), Dyadic::new(2, 0));
    }

    #[test]
    fn rational_conversion() {
        assert_eq!(Dyadic::from_rational(&rat(3, 8)), Some(Dyadic::new(3, 3)));
        assert_eq!(Dyadic::from_rational(&rat(1, 3)), None);
        assert_eq!(Dyadic::new(6, 4).to_rational(), rat(3, 8));
    }
}
