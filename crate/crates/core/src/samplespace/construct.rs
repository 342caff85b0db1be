use super::bitstring::{BitString, MAX_EXPLICIT_BITS, MIN_BITS};
use super::descriptor::{OrbitDescriptor, MAX_DESCRIPTOR_BITS};
use crate::error::{Error, Result};
use crate::exactmath::{Angle, ExactAngle, Rational};

const EVEN: u64 = 0x5555_5555_5555_5555;
const ODD: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// Label bit of `canonical(N)` at index `x`: blocks `a…a`, `(¬a a)…`, `¬a…¬a`, `(a ¬a)…`.
pub(crate) fn canonical_bit(n_bits: u32, x: u64) -> bool {
    let q = 1u64 << (n_bits - 2);
    let off = x % q;
    match x / q {
        0 => false,
        1 => off % 2 == 0,
        2 => true,
        _ => off % 2 == 1,
    }
}

/// Number of `¬a` labels of `canonical(N)` in `[0, x)`.
pub(crate) fn canonical_ones_prefix(n_bits: u32, x: u64) -> u64 {
    let q = 1u64 << (n_bits - 2);
    let full = [0, q / 2, q, q / 2];
    let block = (x / q) as usize;
    let off = x % q;
    let mut total: u64 = full.iter().take(block.min(4)).sum();
    if block < 4 {
        total += match block {
            0 => 0,
            1 => off.div_ceil(2),
            2 => off,
            _ => off / 2,
        };
    }
    total
}

fn canonical_words(n_bits: u32) -> Vec<u64> {
    let len = 1u64 << n_bits;
    let q = len / 4;
    if q >= 64 {
        let per = (q / 64) as usize;
        [0u64, EVEN, u64::MAX, ODD].iter().flat_map(|&w| std::iter::repeat_n(w, per)).collect()
    } else {
        let mut words = vec![0u64; len.div_ceil(64) as usize];
        for x in 0..len {
            if canonical_bit(n_bits, x) {
                words[(x / 64) as usize] |= 1 << (x % 64);
            }
        }
        words
    }
}

fn check_explicit(n_bits: u32) -> Result<()> {
    if n_bits < MIN_BITS {
        return Err(Error::Precondition(format!("N must be at least {MIN_BITS}, got {n_bits}")));
    }
    if n_bits > MAX_EXPLICIT_BITS {
        return Err(Error::ResourceLimit(format!(
            "explicit strings limited to N <= {MAX_EXPLICIT_BITS}, got {n_bits}; use an OrbitDescriptor"
        )));
    }
    Ok(())
}

fn check_descriptor_bits(n_bits: u32) -> Result<()> {
    if !(MIN_BITS..=MAX_DESCRIPTOR_BITS).contains(&n_bits) {
        return Err(Error::Precondition(format!(
            "N must lie in {MIN_BITS}..={MAX_DESCRIPTOR_BITS}, got {n_bits}"
        )));
    }
    Ok(())
}

/// `S_a = S* ‖ i(S*) ‖ i²(S*) ‖ i³(S*)` with `S*` a run of `2^{N-2}` labels `a`.
pub fn canonical(n_bits: u32) -> Result<BitString> {
    check_explicit(n_bits)?;
    let d = OrbitDescriptor::sample(n_bits, 1u64 << (n_bits - 1), 0)?;
    Ok(BitString::from_words(n_bits, canonical_words(n_bits), Some(d)))
}

/// Phase step `n` with `φ/2π = n / 2^{N-1}`.
pub fn phase_rotation(n_bits: u32, phi: &ExactAngle) -> Result<u64> {
    check_descriptor_bits(n_bits)?;
    let n = phi.turns() * &Rational::from(1i64 << (n_bits - 1));
    if !n.is_integer() {
        return Err(Error::NotOnInvariantSet(format!(
            "phase {phi} is not a multiple of 1/2^{} turns",
            n_bits - 1
        )));
    }
    Ok(u64::try_from(n.numer()).expect("turns normalized into [0, 1)"))
}

/// Number of `a` labels, `2^N cos²(θ/2) = 2^{N-1}(1 + cos θ)`.
pub fn theta_count(n_bits: u32, theta: &Angle) -> Result<u64> {
    check_descriptor_bits(n_bits)?;
    let c = theta
        .cos()
        .ok_or_else(|| Error::NotOnInvariantSet(format!("cos of {theta} is irrational")))?;
    let count = (Rational::one() + c) * Rational::from(1i64 << (n_bits - 1));
    if !count.is_integer() {
        return Err(Error::NotOnInvariantSet(format!(
            "cos²(θ/2) for θ = {theta} is not describable by {n_bits} bits"
        )));
    }
    Ok(u64::try_from(count.numer()).expect("cosine within [-1, 1]"))
}

/// `ζ^n(canonical(N))` with `n = 2^{N-1} φ/2π`.
pub fn phase_string(n_bits: u32, phi: &ExactAngle) -> Result<BitString> {
    check_explicit(n_bits)?;
    let n = phase_rotation(n_bits, phi)?;
    expand_counts(n_bits, 1u64 << (n_bits - 1), n)
}

/// `S(θ, φ)`: from `S(φ)`, flip the first `2^{N-1} cos θ` labels `¬a` to `a` when
/// `cos θ ≥ 0`, otherwise the first `-2^{N-1} cos θ` labels `a` to `¬a`.
pub fn sample(n_bits: u32, theta: &Angle, phi: &ExactAngle) -> Result<BitString> {
    check_explicit(n_bits)?;
    let count = theta_count(n_bits, theta)?;
    let n = phase_rotation(n_bits, phi)?;
    expand_counts(n_bits, count, n)
}

/// Descriptor of `S(θ, φ)` for any `N ≤ 62`, without building the string.
pub fn sample_descriptor(n_bits: u32, theta: &Angle, phi: &ExactAngle) -> Result<OrbitDescriptor> {
    OrbitDescriptor::sample(n_bits, theta_count(n_bits, theta)?, phase_rotation(n_bits, phi)?)
}

/// `S(θ, φ)` from integer parameters: `count` labels `a`, phase step `rotation`.
pub fn expand_counts(n_bits: u32, count: u64, rotation: u64) -> Result<BitString> {
    check_explicit(n_bits)?;
    let descriptor = OrbitDescriptor::sample(n_bits, count, rotation)?;
    let len = 1u64 << n_bits;
    let half = len / 2;
    let canon = BitString::from_words(n_bits, canonical_words(n_bits), None);
    let mut words = canon.rotate_left_raw(2 * (rotation % half));
    if count > half {
        clear_first_ones(&mut words, count - half);
    } else if count < half {
        let mask = if len >= 64 { u64::MAX } else { (1u64 << len) - 1 };
        for w in words.iter_mut() {
            *w = !*w & mask;
        }
        clear_first_ones(&mut words, half - count);
        for w in words.iter_mut() {
            *w = !*w & mask;
        }
    }
    Ok(BitString::from_words(n_bits, words, Some(descriptor)))
}

fn clear_first_ones(words: &mut [u64], mut k: u64) {
    for w in words.iter_mut() {
        if k == 0 {
            return;
        }
        let ones = w.count_ones() as u64;
        if ones <= k {
            *w = 0;
            k -= ones;
        } else {
            for _ in 0..k {
                *w &= *w - 1;
            }
            k = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::samplespace::Label;

    #[test]
    fn canonical_small() {
        assert_eq!(canonical(3).unwrap().to_bits(), "00101101");
        assert_eq!(canonical(4).unwrap().to_bits(), "0000101011110101");
        assert!(canonical(2).is_err());
    }

    #[test]
    fn canonical_words_agree_with_bits() {
        for n in 3..=10 {
            let s = canonical(n).unwrap();
            for x in 0..s.len() {
                assert_eq!(s.get(x).bit(), canonical_bit(n, x));
                assert_eq!(canonical_ones_prefix(n, x + 1) - canonical_ones_prefix(n, x), x_bit(n, x));
            }
            assert_eq!(canonical_ones_prefix(n, s.len()), s.len() / 2);
        }
    }

    fn x_bit(n: u32, x: u64) -> u64 {
        canonical_bit(n, x) as u64
    }

    #[test]
    fn gates() {
        assert_eq!(phase_rotation(4, &ExactAngle::turns_ratio(1, 4)).unwrap(), 2);
        assert!(matches!(phase_rotation(4, &ExactAngle::turns_ratio(1, 16)), Err(Error::NotOnInvariantSet(_))));
        assert!(phase_string(5, &ExactAngle::turns_ratio(1, 3)).is_err());
        assert_eq!(theta_count(3, &Angle::from_cos(rat(3, 4))).unwrap(), 7);
        assert!(theta_count(3, &Angle::from_cos(rat(3, 8))).is_err());
        assert!(theta_count(6, &Angle::turns(1, 8)).is_err());
        assert_eq!(theta_count(3, &Angle::turns(1, 6)).unwrap(), 6);
        // θ outside [0, π] folds onto the same count.
        assert_eq!(theta_count(3, &Angle::turns(5, 6)).unwrap(), 6);
    }

    #[test]
    fn endpoints() {
        let phi = ExactAngle::turns_ratio(3, 8);
        let a = sample(5, &Angle::zero(), &phi).unwrap();
        assert!(a.labels().all(|l| l == Label::A));
        let half = sample(5, &Angle::turns(1, 4), &phi).unwrap();
        assert_eq!(half, phase_string(5, &phi).unwrap());
        let na = sample(5, &Angle::turns(1, 2), &phi).unwrap();
        assert!(na.labels().all(|l| l == Label::NotA));
    }

    #[test]
    fn flips_first_occurrences() {
        // canonical(3) = 00101101; cos θ = 1/2 flips the first two ¬a labels.
        let s = sample(3, &Angle::from_cos(rat(1, 2)), &ExactAngle::zero()).unwrap();
        assert_eq!(s.to_bits(), "00000101");
        let s = sample(3, &Angle::from_cos(rat(-1, 2)), &ExactAngle::zero()).unwrap();
        assert_eq!(s.to_bits(), "11101101");
    }
}
