use astro_float::BigFloat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{
    is_describable, sum_verdict, Angle, HighPrecision, Rational, SumVerdict, TrigPair, ORACLE_BITS,
};
use crate::multiqubit::{expand_amplitudes, HalfAngle};

fn default_precision() -> usize {
    ORACLE_BITS
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbrConfig {
    pub alpha: Angle,
    pub beta: Angle,
    pub theta: Angle,
    pub n_bits: u32,
    #[serde(default = "default_precision")]
    pub precision_bits: usize,
}

/// A probability, exact when every trigonometric input is rational.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PbrValue {
    pub exact: bool,
    /// The exact value, or the binary float value at the working precision.
    pub value: Rational,
    pub display: f64,
}

impl PbrValue {
    fn new(exact: bool, value: Rational) -> Self {
        PbrValue { exact, display: value.to_f64(), value }
    }
}

/// `sin θ ≥ 0` for cosine angles, otherwise from the turns.
fn trig_pair(a: &Angle) -> Option<TrigPair> {
    match a {
        Angle::Turns(t) => TrigPair::of_turns(t),
        Angle::Cosine(c) => TrigPair::of_cos(c),
    }
}

/// `(cos θ/2, sin θ/2)` exactly.
fn half_pair(theta: &Angle) -> Option<TrigPair> {
    match theta {
        Angle::Turns(t) => TrigPair::of_turns(&t.half()),
        Angle::Cosine(c) => {
            let two = Rational::from(2);
            let ch = ((Rational::one() + c) / two.clone()).sqrt_exact()?;
            let sh = ((Rational::one() - c) / two).sqrt_exact()?;
            Some(TrigPair { cos: ch, sin: sh })
        }
    }
}

/// `X` and `Z` in exact arithmetic, when all inputs have rational trigonometric values.
pub fn pbr_xz_exact(alpha: &Angle, beta: &Angle, theta: &Angle) -> Option<(Rational, Rational)> {
    let a = trig_pair(alpha)?;
    let b = trig_pair(beta)?;
    let h = half_pair(theta)?;
    let a_b = a.sub(&b);
    let a_2b = a_b.sub(&b);
    let (c, s) = (&h.cos, &h.sin);
    let (c2, s2) = (c * c, s * s);
    let four = Rational::from(4);
    let x = &c2 * &c2 + &s2 * &s2 + Rational::from(2) * &c2 * &s2 * &a_2b.cos;
    let z = &x - &four * &c2 * &s2 - &four * &c2 * c * s * &a_b.cos - four * c * &s2 * s * &b.cos;
    Some((x, z))
}

/// Radians for the three angles.
struct Radians {
    alpha: BigFloat,
    beta: BigFloat,
    theta: BigFloat,
}

impl Radians {
    fn of(alpha: &Angle, beta: &Angle, theta: &Angle, hp: &mut HighPrecision) -> Self {
        Radians { alpha: alpha.radians(hp), beta: beta.radians(hp), theta: theta.radians(hp) }
    }
}

/// The closed forms for `X` and `Z` at the precision of `hp`.
fn xz_closed_form(r: &Radians, hp: &mut HighPrecision) -> (BigFloat, BigFloat) {
    let half = hp.div(&r.theta, &hp.small(2));
    let c = hp.cos(&half);
    let s = hp.sin(&half);
    let two_beta = hp.mul(&r.beta, &hp.small(2));
    let a_2b = hp.sub(&r.alpha, &two_beta);
    let a_b = hp.sub(&r.alpha, &r.beta);
    let cos_a2b = hp.cos(&a_2b);
    let cos_ab = hp.cos(&a_b);
    let cos_b = hp.cos(&r.beta);
    let c2 = hp.mul(&c, &c);
    let s2 = hp.mul(&s, &s);
    let c2s2 = hp.mul(&c2, &s2);
    let x = hp.add(&hp.add(&hp.mul(&c2, &c2), &hp.mul(&s2, &s2)), &hp.mul(&hp.mul(&hp.small(2), &c2s2), &cos_a2b));
    let four = hp.small(4);
    let t1 = hp.mul(&four, &c2s2);
    let t2 = hp.mul(&four, &hp.mul(&hp.mul(&c2, &hp.mul(&c, &s)), &cos_ab));
    let t3 = hp.mul(&four, &hp.mul(&hp.mul(&s2, &hp.mul(&c, &s)), &cos_b));
    let z = hp.sub(&hp.sub(&hp.sub(&x, &t1), &t2), &t3);
    (x, z)
}

/// Complex number at the precision of a [`HighPrecision`].
#[derive(Clone)]
struct Cx {
    re: BigFloat,
    im: BigFloat,
}

impl Cx {
    fn real(re: BigFloat, hp: &HighPrecision) -> Self {
        Cx { re, im: hp.small(0) }
    }

    fn polar(r: BigFloat, arg: &BigFloat, hp: &mut HighPrecision) -> Self {
        let (c, s) = (hp.cos(arg), hp.sin(arg));
        Cx { re: hp.mul(&r, &c), im: hp.mul(&r, &s) }
    }

    fn add(&self, o: &Cx, hp: &HighPrecision) -> Cx {
        Cx { re: hp.add(&self.re, &o.re), im: hp.add(&self.im, &o.im) }
    }

    fn mul(&self, o: &Cx, hp: &HighPrecision) -> Cx {
        Cx {
            re: hp.sub(&hp.mul(&self.re, &o.re), &hp.mul(&self.im, &o.im)),
            im: hp.add(&hp.mul(&self.re, &o.im), &hp.mul(&self.im, &o.re)),
        }
    }

    fn norm_sq(&self, hp: &HighPrecision) -> BigFloat {
        hp.add(&hp.mul(&self.re, &self.re), &hp.mul(&self.im, &self.im))
    }
}

/// Magnitudes `γ_0 … γ_3` of `|ψ0⟩|ψ0⟩` from the symbolic two-qubit amplitude expansion.
fn product_state_gammas(theta: &BigFloat, hp: &mut HighPrecision) -> Vec<BigFloat> {
    let half = hp.div(theta, &hp.small(2));
    let (c, s) = (hp.cos(&half), hp.sin(&half));
    expand_amplitudes(2)
        .iter()
        .map(|t| {
            t.factors.iter().fold(hp.small(1), |acc, &(_, h)| match h {
                HalfAngle::Cos => hp.mul(&acc, &c),
                HalfAngle::Sin => hp.mul(&acc, &s),
            })
        })
        .collect()
}

/// `X = |γ_00 + γ_11 e^{i(α-2β)}|²` and
/// `Z = X - 4γ_01γ_10 - 4 Re(γ_00γ_01 e^{i(α-β)} + γ_10γ_11 e^{iβ})`, in complex arithmetic.
fn xz_amplitudes(r: &Radians, hp: &mut HighPrecision) -> (BigFloat, BigFloat) {
    let g = product_state_gammas(&r.theta, hp);
    let two_beta = hp.mul(&r.beta, &hp.small(2));
    let a_2b = hp.sub(&r.alpha, &two_beta);
    let a_b = hp.sub(&r.alpha, &r.beta);
    let amp = Cx::real(g[0].clone(), hp).add(&Cx::polar(g[3].clone(), &a_2b, hp), hp);
    let x = amp.norm_sq(hp);
    let p = Cx::polar(hp.small(1), &a_b, hp).mul(&Cx::real(hp.mul(&g[0], &g[1]), hp), hp);
    let q = Cx::polar(hp.small(1), &r.beta, hp).mul(&Cx::real(hp.mul(&g[2], &g[3]), hp), hp);
    let cross = p.add(&q, hp);
    let four = hp.small(4);
    let z = hp.sub(&hp.sub(&x, &hp.mul(&four, &hp.mul(&g[1], &g[2]))), &hp.mul(&four, &cross.re));
    (x, z)
}

/// `X` and `Z`: exact when possible, otherwise at the precision of `hp`.
pub fn pbr_xz(alpha: &Angle, beta: &Angle, theta: &Angle, hp: &mut HighPrecision) -> (PbrValue, PbrValue) {
    if let Some((x, z)) = pbr_xz_exact(alpha, beta, theta) {
        return (PbrValue::new(true, x), PbrValue::new(true, z));
    }
    let r = Radians::of(alpha, beta, theta, hp);
    let (x, z) = xz_closed_form(&r, hp);
    (PbrValue::new(false, hp.to_rational(&x)), PbrValue::new(false, hp.to_rational(&z)))
}

pub fn pbr_x(alpha: &Angle, beta: &Angle, theta: &Angle, hp: &mut HighPrecision) -> PbrValue {
    pbr_xz(alpha, beta, theta, hp).0
}

pub fn pbr_z(alpha: &Angle, beta: &Angle, theta: &Angle, hp: &mut HighPrecision) -> PbrValue {
    pbr_xz(alpha, beta, theta, hp).1
}

/// `X` and `Z` from the closed forms and from the amplitude route, as floats at the
/// precision of `hp`, with `θ` in radians.
pub fn pbr_xz_routes(
    alpha: &BigFloat,
    beta: &BigFloat,
    theta: &BigFloat,
    hp: &mut HighPrecision,
) -> [(BigFloat, BigFloat); 2] {
    let r = Radians { alpha: alpha.clone(), beta: beta.clone(), theta: theta.clone() };
    [xz_closed_form(&r, hp), xz_amplitudes(&r, hp)]
}

/// A zero of `Z` in `θ` found by bisection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbrRoot {
    /// `θ` in radians, as the binary float value.
    pub theta: Rational,
    pub z: Rational,
    pub x: Rational,
    pub iterations: u32,
}

/// Bisect `Z(α, β, θ)` over `θ ∈ [lo, hi]` radians; `Z` must change sign on the bracket.
pub fn pbr_z_root(
    alpha: &Angle,
    beta: &Angle,
    lo: &Rational,
    hi: &Rational,
    hp: &mut HighPrecision,
) -> Result<PbrRoot> {
    let a = alpha.radians(hp);
    let b = beta.radians(hp);
    let mut lo = hp.rational(lo);
    let mut hi = hp.rational(hi);
    let z_of = |t: &BigFloat, hp: &mut HighPrecision| {
        xz_closed_form(&Radians { alpha: a.clone(), beta: b.clone(), theta: t.clone() }, hp)
    };
    let lo_neg = z_of(&lo, hp).1.is_negative();
    if lo_neg == z_of(&hi, hp).1.is_negative() {
        return Err(Error::Precondition("Z does not change sign on the bracket".into()));
    }
    let iterations = hp.precision() as u32;
    for _ in 0..iterations {
        let mid = hp.div(&hp.add(&lo, &hi), &hp.small(2));
        if z_of(&mid, hp).1.is_negative() == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (x, z) = z_of(&lo, hp);
    Ok(PbrRoot { theta: hp.to_rational(&lo), z: hp.to_rational(&z), x: hp.to_rational(&x), iterations })
}

/// Sign of the sine, for the addition formula.
fn sin_sign(a: &Angle) -> i8 {
    match a {
        Angle::Turns(t) => super::substitute::sin_sign(t),
        Angle::Cosine(c) => {
            if *c == 1 || *c == -1 {
                0
            } else {
                1
            }
        }
    }
}

/// Whether `cos(α-β) = cos((α-2β) + β)` stays describable when `cos(α-2β)` and `cos β` are.
pub fn pbr_simultaneity(alpha_minus_2beta: &Angle, beta: &Angle, n_bits: u32) -> Result<SumVerdict> {
    let cos = |a: &Angle| {
        a.cos()
            .filter(|c| is_describable(c, n_bits))
            .ok_or_else(|| Error::Precondition(format!("cos of {a} is not describable by {n_bits} bits")))
    };
    let same_sign = sin_sign(alpha_minus_2beta) * sin_sign(beta) >= 0;
    sum_verdict(&cos(alpha_minus_2beta)?, &cos(beta)?, same_sign, n_bits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Simultaneity {
    Evaluated { verdict: SumVerdict },
    NotApplicable { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PbrReport {
    pub config: PbrConfig,
    pub x: PbrValue,
    pub z: PbrValue,
    pub x_describable: bool,
    pub z_describable: bool,
    pub simultaneity: Simultaneity,
}

pub fn pbr_run(cfg: &PbrConfig) -> Result<PbrReport> {
    let hp = &mut HighPrecision::new(cfg.precision_bits);
    let (x, z) = pbr_xz(&cfg.alpha, &cfg.beta, &cfg.theta, hp);
    let a_2b = match (&cfg.alpha, &cfg.beta) {
        (Angle::Turns(a), Angle::Turns(b)) => Some(Angle::Turns(&(a - b) - b)),
        _ => None,
    };
    let simultaneity = match a_2b.map(|a| pbr_simultaneity(&a, &cfg.beta, cfg.n_bits)) {
        Some(Ok(verdict)) => Simultaneity::Evaluated { verdict },
        Some(Err(e)) => Simultaneity::NotApplicable { reason: e.to_string() },
        None => Simultaneity::NotApplicable { reason: "α - 2β needs α and β in turns".into() },
    };
    Ok(PbrReport {
        config: cfg.clone(),
        x_describable: x.exact && is_describable(&x.value, cfg.n_bits),
        z_describable: z.exact && is_describable(&z.value, cfg.n_bits),
        x,
        z,
        simultaneity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ExclusionReason};

    #[test]
    fn endpoints() {
        let hp = &mut HighPrecision::default();
        for theta in [Angle::zero(), Angle::turns(1, 2)] {
            for (a, b) in [(Angle::zero(), Angle::zero()), (Angle::turns(1, 4), Angle::turns(1, 2))] {
                let (x, z) = pbr_xz(&a, &b, &theta, hp);
                assert!(x.exact && z.exact);
                assert_eq!((x.value, z.value), (rat(1, 1), rat(1, 1)));
            }
        }
    }

    #[test]
    fn exact_matches_numeric() {
        let hp = &mut HighPrecision::default();
        let (a, b, t) = (Angle::turns(1, 4), Angle::from_cos(rat(3, 5)), Angle::from_cos(rat(7, 25)));
        let (x, z) = pbr_xz_exact(&a, &b, &t).unwrap();
        let alpha = a.radians(hp);
        let beta = b.radians(hp);
        let theta = t.radians(hp);
        let tol = hp.pow2(-200);
        let (xe, ze) = (hp.rational(&x), hp.rational(&z));
        for (xf, zf) in pbr_xz_routes(&alpha, &beta, &theta, hp) {
            assert!(hp.close(&xf, &xe, &tol));
            assert!(hp.close(&zf, &ze, &tol));
        }
    }

    #[test]
    fn root_at_zero_phases() {
        let hp = &mut HighPrecision::new(200);
        let pi = hp.pi();
        let hi = hp.to_rational(&hp.div(&pi, &hp.small(2)));
        let root = pbr_z_root(&Angle::zero(), &Angle::zero(), &rat(0, 1), &hi, hp).unwrap();
        assert!(root.z.abs() < Rational::pow2_inv(60));
        assert!((&root.x - &rat(1, 1)).abs() < Rational::pow2_inv(190));
        // Z = 1 - sin²θ - 2 sin θ vanishes at sin θ = √2 - 1.
        assert!((root.theta.to_f64().sin() - (2f64.sqrt() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn simultaneity_examples() {
        let v = pbr_simultaneity(&Angle::from_cos(rat(1, 2)), &Angle::from_cos(rat(3, 4)), 2).unwrap();
        assert_eq!(v.reason(), Some(ExclusionReason::IrrationalSine));
        let v = pbr_simultaneity(&Angle::from_cos(rat(5, 8)), &Angle::zero(), 3).unwrap();
        assert_eq!(v, SumVerdict::BothAdmissible { sum_cos: rat(5, 8) });
        assert!(pbr_simultaneity(&Angle::turns(1, 8), &Angle::zero(), 3).is_err());
    }

    #[test]
    fn report_falls_back_to_high_precision() {
        let cfg = PbrConfig {
            alpha: Angle::turns(1, 8),
            beta: Angle::turns(1, 16),
            theta: Angle::turns(1, 5),
            n_bits: 8,
            precision_bits: 256,
        };
        let r = pbr_run(&cfg).unwrap();
        assert!(!r.x.exact && !r.x_describable);
        assert!(matches!(r.simultaneity, Simultaneity::NotApplicable { .. }));
    }
}
