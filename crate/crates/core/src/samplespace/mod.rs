//! Bit strings over `{a, ¬a}`, the operators `ζ` and `i`, the canonical construction of
//! `S(θ, φ)`, its Hilbert-vector shadow, and trajectory bundles.

mod bitstring;
mod bundle;
mod construct;
mod descriptor;
mod reconstruct;

pub use bitstring::{BitString, Label, MAX_EXPLICIT_BITS, MIN_BITS};
pub use bundle::{bundle_refine, haar, TrajectoryBundle};
pub use construct::{
    canonical, expand_counts, phase_rotation, phase_string, sample, sample_descriptor, theta_count,
};
pub use descriptor::{Construction, HilbertShadow, OrbitDescriptor, MAX_DESCRIPTOR_BITS};
pub use reconstruct::{reconstruct_descriptor, MAX_RECONSTRUCT_BITS};

use crate::error::{Error, Result};
use crate::exactmath::Dyadic;

/// `ζ^n(S)`.
pub fn zeta(s: &BitString, n: i64) -> BitString {
    s.zeta(n)
}

/// `i^n(S)`.
pub fn iop(s: &BitString, n: i64) -> BitString {
    s.iop(n)
}

/// Frequency of `a` labels.
pub fn fraction(s: &BitString) -> Dyadic {
    s.fraction()
}

/// Equality as sample spaces, i.e. up to permutation: the label counts agree.
pub fn sample_equivalent(x: &BitString, y: &BitString) -> Result<bool> {
    if x.n_bits() != y.n_bits() {
        return Err(Error::LengthMismatch { expected: x.len() as usize, found: y.len() as usize });
    }
    Ok(x.count_a() == y.count_a())
}

/// Hilbert-vector parameters of a constructed string.
pub fn hilbert_shadow(s: &BitString) -> Result<HilbertShadow> {
    s.descriptor().ok_or(Error::MissingDescriptor)?.shadow()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, Angle, ExactAngle};

    const N4: [&str; 4] = [
        "0000101011110101",
        "0010101111010100",
        "1010111101010000",
        "1111010100001010",
    ];

    #[test]
    fn four_bit_table() {
        let s = canonical(4).unwrap();
        assert_eq!(s.to_bits(), N4[0]);
        assert_eq!(zeta(&s, 1).to_bits(), N4[1]);
        assert_eq!(zeta(&s, 2).to_bits(), N4[2]);
        assert_eq!(zeta(&s, 4).to_bits(), N4[3]);
        assert_eq!(zeta(&s, 2), iop(&s, 1));
        assert_eq!(zeta(&s, 4), s.negate());
    }

    #[test]
    fn shadows() {
        let phi = ExactAngle::turns_ratio(1, 4);
        let s = sample(6, &Angle::turns(1, 4), &phi).unwrap();
        let sh = hilbert_shadow(&s).unwrap();
        assert_eq!(sh.cos_half_sq, Dyadic::new(1, 1));
        assert_eq!(sh.phi_turns, Some(Dyadic::new(1, 2)));
        let top = sample(6, &Angle::zero(), &phi).unwrap();
        assert_eq!(hilbert_shadow(&top).unwrap().phi_turns, None);
        let raw = BitString::from_bits(N4[0]).unwrap();
        assert_eq!(hilbert_shadow(&raw), Err(Error::MissingDescriptor));
        let z = zeta(&phase_string(6, &ExactAngle::turns_ratio(7, 8)).unwrap(), 5);
        assert_eq!(
            hilbert_shadow(&z).unwrap().phi_turns.unwrap().to_rational(),
            rat(7, 8) + rat(5, 32) - rat(1, 1)
        );
    }

    #[test]
    fn equivalence() {
        let c = canonical(4).unwrap();
        assert!(sample_equivalent(&c, &iop(&c, 1)).unwrap());
        let a = BitString::filled(4, Label::A).unwrap();
        assert!(!sample_equivalent(&a, &a.negate()).unwrap());
        assert!(sample_equivalent(&a, &canonical(3).unwrap()).is_err());
        assert_eq!(fraction(&c), Dyadic::new(1, 1));
    }
}
