//! Rational cosines of rational-turn angles against an independent numeric oracle.

use invset::exactmath::{cos_exact, ExactAngle, HighPrecision, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `2cos(2πt)` is an algebraic integer, so it is rational only when it is one of the
/// integers -2..=2. Decide which from a 200-bit value.
fn algebraic_integer_oracle(t: &Rational, hp: &mut HighPrecision) -> Option<Rational> {
    let x = hp.turns_to_radians(t);
    let c = hp.cos(&x);
    for j in -2i64..=2 {
        let target = hp.rational(&Rational::new(j, 2));
        if hp.close(&c, &target, &hp.pow2(-150)) {
            return Some(Rational::new(j, 2));
        }
    }
    None
}

/// Convergents `p/q` of `x` with `q <= max_q`.
fn convergents(x: &Rational, max_q: &BigInt) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    loop {
        let a = r.floor();
        let (p2, q2) = (&a * &p1 + &p0, &a * &q1 + &q0);
        if &q2 > max_q {
            break;
        }
        out.push(Rational::new(p2.clone(), q2.clone()));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = &r - &Rational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        r = frac.recip();
    }
    out
}

#[test]
fn exceptional_set_matches_oracle() {
    let hp = &mut HighPrecision::new(200);
    let exceptional = [(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)].map(|(a, b)| Rational::new(a, b));
    let mut rational = 0;
    // cos(mπ/n) = cos(2π · m/2n) for n <= 100, 0 <= m < 2n.
    for n in 1..=100i64 {
        for m in 0..2 * n {
            let t = Rational::new(m, 2 * n);
            let exact = cos_exact(&ExactAngle::from_turns(t.clone())).rational().cloned();
            assert_eq!(exact, algebraic_integer_oracle(&t, hp), "turns {t}");
            if let Some(v) = exact {
                assert!(exceptional.contains(&v));
                rational += 1;
            }
        }
    }
    // m/2n reduces to a denominator in {1, 2, 3, 4, 6}.
    assert!(rational > 300);
}

#[test]
fn irrational_verdicts_have_no_close_small_rational() {
    let hp = &mut HighPrecision::new(200);
    let max_q = BigInt::one() << 32usize;
    let tol = Rational::pow2_inv(100);
    for n in 1..=100i64 {
        for m in 0..2 * n {
            let t = ExactAngle::turns_ratio(m, 2 * n);
            if cos_exact(&t).is_rational() {
                continue;
            }
            let x = hp.turns_to_radians(t.turns());
            let c = hp.cos(&x);
            let approx = hp.to_rational(&c);
            // Best approximations with bounded denominator are convergents.
            for pq in convergents(&approx, &max_q) {
                assert!((&approx - &pq).abs() > tol, "cos({m}π/{n}) ≈ {pq}");
            }
        }
    }
}

#[test]
fn oracle_detects_known_values() {
    let hp = &mut HighPrecision::new(200);
    assert_eq!(algebraic_integer_oracle(&Rational::new(1, 6), hp), Some(Rational::new(1, 2)));
    assert_eq!(algebraic_integer_oracle(&Rational::new(1, 8), hp), None);
    let c = convergents(&Rational::new(355, 113), &BigInt::from(1000));
    assert_eq!(c.last(), Some(&Rational::new(355, 113)));
}
