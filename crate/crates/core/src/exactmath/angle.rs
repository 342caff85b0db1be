use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use astro_float::BigFloat;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::numeric::HighPrecision;
use super::trig::{cos_exact, CosValue};
use super::Rational;
use crate::error::Error;

/// An angle stored as an exact fraction of a full turn, normalized into `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactAngle {
    turns: Rational,
}

impl ExactAngle {
    pub fn from_turns(turns: Rational) -> Self {
        ExactAngle { turns: turns.fract_pos() }
    }

    pub fn turns_ratio(n: i64, d: i64) -> Self {
        ExactAngle::from_turns(Rational::new(n, d))
    }

    pub fn zero() -> Self {
        ExactAngle { turns: Rational::zero() }
    }

    pub fn turns(&self) -> &Rational {
        &self.turns
    }

    pub fn is_zero(&self) -> bool {
        self.turns.is_zero()
    }

    /// The angle times an integer, reduced mod one turn.
    pub fn scale(&self, k: i64) -> Self {
        ExactAngle::from_turns(&self.turns * &Rational::from(k))
    }

    /// Half the angle, taken in `[0, 1/2)` turns.
    pub fn half(&self) -> Self {
        ExactAngle { turns: &self.turns / &Rational::from(2) }
    }

    pub fn radians(&self, hp: &mut HighPrecision) -> BigFloat {
        hp.turns_to_radians(&self.turns)
    }

    pub fn cos(&self) -> CosValue {
        cos_exact(self)
    }
}

impl Add for &ExactAngle {
    type Output = ExactAngle;
    fn add(self, rhs: &ExactAngle) -> ExactAngle {
        ExactAngle::from_turns(&self.turns + &rhs.turns)
    }
}

impl Add for ExactAngle {
    type Output = ExactAngle;
    fn add(self, rhs: ExactAngle) -> ExactAngle {
        &self + &rhs
    }
}

impl Sub for &ExactAngle {
    type Output = ExactAngle;
    fn sub(self, rhs: &ExactAngle) -> ExactAngle {
        ExactAngle::from_turns(&self.turns - &rhs.turns)
    }
}

impl Sub for ExactAngle {
    type Output = ExactAngle;
    fn sub(self, rhs: ExactAngle) -> ExactAngle {
        &self - &rhs
    }
}

impl Neg for &ExactAngle {
    type Output = ExactAngle;
    fn neg(self) -> ExactAngle {
        ExactAngle::from_turns(-&self.turns)
    }
}

impl fmt::Display for ExactAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} turns", self.turns)
    }
}

impl fmt::Debug for ExactAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactAngle({})", self.turns)
    }
}

impl FromStr for ExactAngle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(ExactAngle::from_turns(s.parse()?))
    }
}

impl Serialize for ExactAngle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.turns.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactAngle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(ExactAngle::from_turns(Rational::deserialize(d)?))
    }
}

/// A setting angle, given either as exact rational turns or by an exact rational cosine.
///
/// Rational-turn angles have rational cosines only on the exceptional set
/// `{0, ±1/2, ±1}`, so amplitude parameters such as `θ` with `cos θ = 3/4` are carried
/// by their cosine. A cosine-specified angle lies in `[0, π]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Angle {
    Turns(ExactAngle),
    Cosine(Rational),
}

impl Angle {
    pub fn turns(n: i64, d: i64) -> Self {
        Angle::Turns(ExactAngle::turns_ratio(n, d))
    }

    /// Angle in `[0, π]` with the given cosine. Panics outside `[-1, 1]`.
    pub fn from_cos(c: Rational) -> Self {
        assert!(c >= -1 && c <= 1, "cosine {c} outside [-1, 1]");
        Angle::Cosine(c)
    }

    pub fn zero() -> Self {
        Angle::Turns(ExactAngle::zero())
    }

    /// Exact cosine, when rational.
    pub fn cos(&self) -> Option<Rational> {
        match self {
            Angle::Turns(t) => t.cos().rational().cloned(),
            Angle::Cosine(c) => Some(c.clone()),
        }
    }

    /// Exact `cos²(θ/2) = (1 + cos θ)/2`, when rational.
    pub fn cos_half_sq(&self) -> Option<Rational> {
        self.cos().map(|c| (Rational::one() + c) / Rational::from(2))
    }

    /// The angle in radians. Cosine-specified angles map to `acos(c) ∈ [0, π]`.
    pub fn radians(&self, hp: &mut HighPrecision) -> BigFloat {
        match self {
            Angle::Turns(t) => t.radians(hp),
            Angle::Cosine(c) => {
                let x = hp.rational(c);
                hp.acos(&x)
            }
        }
    }

    /// Representative in `[0, π]`, as turns in `[0, 1/2]`, when the angle is given in turns.
    pub fn folded_turns(&self) -> Option<Rational> {
        match self {
            Angle::Turns(t) => {
                let half = Rational::new(1, 2);
                if t.turns() > &half {
                    Some(Rational::one() - t.turns())
                } else {
                    Some(t.turns().clone())
                }
            }
            Angle::Cosine(_) => None,
        }
    }
}

impl From<ExactAngle> for Angle {
    fn from(a: ExactAngle) -> Self {
        Angle::Turns(a)
    }
}

impl From<&ExactAngle> for Angle {
    fn from(a: &ExactAngle) -> Self {
        Angle::Turns(a.clone())
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Turns(t) => fmt::Display::fmt(t, f),
            Angle::Cosine(c) => write!(f, "acos({c})"),
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form: a turn string `"m/n"`, or `{"cos": "m/n"}`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AngleRepr {
    Turns(Rational),
    Cosine { cos: Rational },
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Angle::Turns(t) => AngleRepr::Turns(t.turns().clone()).serialize(s),
            Angle::Cosine(c) => AngleRepr::Cosine { cos: c.clone() }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match AngleRepr::deserialize(d)? {
            AngleRepr::Turns(t) => Ok(Angle::Turns(ExactAngle::from_turns(t))),
            AngleRepr::Cosine { cos } => {
                if cos < -1 || cos > 1 {
                    return Err(serde::de::Error::custom(format!("cosine {cos} outside [-1, 1]")));
                }
                Ok(Angle::Cosine(cos))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    #[test]
    fn normalizes_into_unit_interval() {
        assert_eq!(ExactAngle::turns_ratio(5, 4).turns(), &rat(1, 4));
        assert_eq!(ExactAngle::turns_ratio(-1, 8).turns(), &rat(7, 8));
        assert_eq!(ExactAngle::turns_ratio(1, 1).turns(), &rat(0, 1));
    }

    #[test]
    fn arithmetic_wraps() {
        let a = ExactAngle::turns_ratio(3, 4);
        let b = ExactAngle::turns_ratio(1, 2);
        assert_eq!((&a + &b).turns(), &rat(1, 4));
        assert_eq!((&b - &a).turns(), &rat(3, 4));
        assert_eq!(a.scale(3).turns(), &rat(1, 4));
    }

    #[test]
    fn cosine_angles() {
        assert_eq!(Angle::turns(1, 6).cos(), Some(rat(1, 2)));
        assert_eq!(Angle::turns(1, 8).cos(), None);
        assert_eq!(Angle::from_cos(rat(3, 4)).cos_half_sq(), Some(rat(7, 8)));
        assert_eq!(Angle::turns(3, 4).folded_turns(), Some(rat(1, 4)));
    }

    #[test]
    fn json_forms() {
        let a: Angle = serde_json::from_str("\"1/8\"").unwrap();
        assert_eq!(a, Angle::turns(1, 8));
        let b: Angle = serde_json::from_str(r#"{"cos": "3/4"}"#).unwrap();
        assert_eq!(b, Angle::from_cos(rat(3, 4)));
        assert!(serde_json::from_str::<Angle>(r#"{"cos": "3/2"}"#).is_err());
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"cos":"3/4"}"#);
    }
}
