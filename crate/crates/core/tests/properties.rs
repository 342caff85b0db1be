//! Randomized properties of the exact arithmetic, the string operators and the p-adic metric.

use invset::exactmath::{is_describable, ExactAngle, Rational};
use invset::padic::{cantor_interval, cantor_map, padic_dist, padic_norm, PadicInt};
use invset::samplespace::{canonical, BitString, Label};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-5000i64..5000, 1i64..5000).prop_map(|(n, d)| Rational::new(n, d))
}

fn bit_string(n_bits: u32) -> impl Strategy<Value = BitString> {
    proptest::collection::vec(any::<bool>(), 1usize << n_bits).prop_map(move |bits| {
        let labels: Vec<Label> = bits.into_iter().map(Label::from_bit).collect();
        BitString::from_labels(n_bits, &labels).unwrap()
    })
}

proptest! {
    #[test]
    fn describability_is_monotone(n in -100_000i64..100_000, k in 0u32..20, bits in 1u32..24) {
        let x = Rational::new(n, 1i64 << k);
        if is_describable(&x, bits) {
            prop_assert!(is_describable(&x, bits + 1));
        }
        prop_assert_eq!(is_describable(&x, bits), x.dyadic_exponent().unwrap() <= bits);
    }

    #[test]
    fn angle_addition_is_associative(a in rational(), b in rational(), c in rational()) {
        let (a, b, c) = (ExactAngle::from_turns(a), ExactAngle::from_turns(b), ExactAngle::from_turns(c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn operators_on_random_strings(s in bit_string(6), n in -200i64..200, k in -9i64..9) {
        prop_assert_eq!(s.zeta(n).zeta(-n), s.clone());
        prop_assert_eq!(s.zeta(n + 32), s.zeta(n));
        prop_assert_eq!(s.iop(k + 4), s.iop(k));
        prop_assert_eq!(s.iop(2), s.negate());
        prop_assert_eq!(s.zeta(n).count_a(), s.count_a());
    }

    #[test]
    fn canonical_rotation_is_i(n_bits in 3u32..=12, k in 0i64..4) {
        let c = canonical(n_bits).unwrap();
        prop_assert_eq!(c.zeta(k << (n_bits - 3)), c.iop(k));
    }

    #[test]
    fn ultrametric(a in rational(), b in rational(), c in rational(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let ac = padic_dist(&a, &c, p).unwrap();
        let ab = padic_dist(&a, &b, p).unwrap();
        let bc = padic_dist(&b, &c, p).unwrap();
        prop_assert!(ac <= ab.max(bc));
    }

    #[test]
    fn norm_is_multiplicative(x in rational(), y in rational(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assert_eq!(padic_norm(&(&x * &y), p).unwrap(), padic_norm(&x, p).unwrap() * padic_norm(&y, p).unwrap());
    }

    #[test]
    fn cantor_image_in_its_interval(p in prop::sample::select(vec![2u64, 3, 5]), seed in proptest::collection::vec(0u64..1000, 1..14)) {
        let digits: Vec<u64> = seed.iter().map(|d| d % p).collect();
        let z = PadicInt::new(p, digits.clone()).unwrap();
        let x = cantor_map(&z);
        let iv = cantor_interval(p, &digits);
        prop_assert!(iv.contains(&x));
        prop_assert_eq!(iv.width(), Rational::new(1, num_bigint::BigInt::from(2 * p - 1).pow(digits.len() as u32)));
    }
}
