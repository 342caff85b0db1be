//! Exact rational and dyadic arithmetic, angles in turns, and the describability predicates.

mod angle;
pub mod describe;
mod dyadic;
pub mod numeric;
pub mod rational;
pub mod trig;

pub use angle::{Angle, ExactAngle};
pub use describe::{
    is_describable, pythagorean_solutions, simultaneous_describability, sum_verdict,
    ExclusionReason, SumVerdict,
};
pub use dyadic::Dyadic;
pub use numeric::{HighPrecision, ORACLE_BITS};
pub use rational::{rat, Rational};
pub use trig::{cos_exact, sin_exact, CosValue, TrigPair};
