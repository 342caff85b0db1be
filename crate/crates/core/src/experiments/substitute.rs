use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{Angle, ExactAngle, HighPrecision, Rational};
use crate::samplespace::theta_count;

/// Default precision window `2^{-(N-2)}` turns.
pub fn default_window(n_bits: u32) -> Rational {
    Rational::pow2_inv(n_bits.saturating_sub(2))
}

/// The angle actually used in place of a requested one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Substitution {
    pub requested: ExactAngle,
    /// Exact cosine of the angle used, of the form `k / 2^{N-1}`.
    pub cos: Rational,
    pub substituted: bool,
    /// Display values, in turns, of the used angle folded into `[0, 1/2]` and of its
    /// distance from the folded request.
    pub used_turns: f64,
    pub deviation_turns: f64,
}

impl Substitution {
    /// The used angle in `[0, π]`.
    pub fn angle(&self) -> Angle {
        Angle::Cosine(self.cos.clone())
    }
}

/// Sign of `sin(2π·turns)`.
pub fn sin_sign(a: &ExactAngle) -> i8 {
    let half = Rational::new(1, 2);
    let t = a.turns();
    if t.is_zero() || *t == half {
        0
    } else if t < &half {
        1
    } else {
        -1
    }
}

/// Nearest angle whose `cos²(θ/2)` is describable by `N` bits, i.e. `cos θ = k / 2^{N-1}`.
///
/// Distances are measured between angles folded into `[0, π]` at the precision of `hp`.
pub fn nearest_admissible(
    requested: &ExactAngle,
    n_bits: u32,
    window: &Rational,
    hp: &mut HighPrecision,
) -> Result<Substitution> {
    let angle = Angle::Turns(requested.clone());
    let folded = angle.folded_turns().expect("turn angle");
    if let (Some(c), Ok(_)) = (angle.cos(), theta_count(n_bits, &angle)) {
        return Ok(Substitution {
            requested: requested.clone(),
            cos: c,
            substituted: false,
            used_turns: folded.to_f64(),
            deviation_turns: 0.0,
        });
    }
    let scale = BigInt::from(1) << (n_bits - 1) as usize;
    let x = hp.turns_to_radians(requested.turns());
    let c = hp.cos(&x);
    let s = hp.int(&scale);
    let scaled = hp.mul(&c, &s);
    let lo = hp.to_rational(&scaled).floor();
    let target = hp.rational(&folded);
    let mut best: Option<(Rational, _, _)> = None;
    for k in [lo.clone(), lo + 1] {
        if k < -scale.clone() || k > scale {
            continue;
        }
        let cos = Rational::new(k, scale.clone());
        let v = hp.rational(&cos);
        let theta = hp.acos(&v);
        let used = hp.radians_to_turns(&theta);
        let dev = hp.sub(&used, &target).abs();
        if best.as_ref().map_or(true, |(_, _, d)| hp.less(&dev, d)) {
            best = Some((cos, used, dev));
        }
    }
    let (cos, used, dev) = best.expect("at least one candidate in range");
    let w = hp.rational(window);
    if !hp.less(&dev, &w) {
        return Err(Error::NoAdmissibleAngle {
            requested: requested.to_string(),
            window: window.to_string(),
        });
    }
    Ok(Substitution {
        requested: requested.clone(),
        cos,
        substituted: true,
        used_turns: hp.to_f64(&used),
        deviation_turns: hp.to_f64(&dev),
    })
}
