use serde::{Deserialize, Serialize};

use super::bitstring::{BitString, MIN_BITS};
use super::construct::{canonical_bit, canonical_ones_prefix, expand_counts};
use crate::error::{Error, Result};
use crate::exactmath::Dyadic;

/// Largest `N` a descriptor can address (`2^N` must fit a `u64` with room to spare).
pub const MAX_DESCRIPTOR_BITS: u32 = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Produced by the canonical construction; expanding reproduces the string.
    Canonical,
    /// Counts of an arbitrary string; carries no Hilbert-vector parameters.
    Raw,
}

/// Compact form of `ζ^post(S(θ, φ))`.
///
/// `rotation` is the phase step `n` of `φ/2π = n/2^{N-1}`, `theta_count` the number of
/// `a` labels, `post_rotation` further `ζ` steps applied after the amplitude flips.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitDescriptor {
    pub n_bits: u32,
    pub rotation: u64,
    pub theta_count: u64,
    pub post_rotation: u64,
    pub construction: Construction,
}

/// Parameters of the Hilbert vector `cos(θ/2)|a⟩ + e^{iφ} sin(θ/2)|¬a⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HilbertShadow {
    pub cos_half_sq: Dyadic,
    /// `φ/2π`; `None` when `θ ∈ {0, π}` and the phase is unobservable.
    pub phi_turns: Option<Dyadic>,
}

impl OrbitDescriptor {
    /// Descriptor of `S(θ, φ)` from its integer parameters.
    pub fn sample(n_bits: u32, theta_count: u64, rotation: u64) -> Result<Self> {
        if !(MIN_BITS..=MAX_DESCRIPTOR_BITS).contains(&n_bits) {
            return Err(Error::Precondition(format!(
                "descriptor N must lie in {MIN_BITS}..={MAX_DESCRIPTOR_BITS}, got {n_bits}"
            )));
        }
        if theta_count > 1u64 << n_bits {
            return Err(Error::Precondition(format!("theta_count {theta_count} exceeds 2^{n_bits}")));
        }
        Ok(OrbitDescriptor {
            n_bits,
            rotation,
            theta_count,
            post_rotation: 0,
            construction: Construction::Canonical,
        }
        .normalized())
    }

    pub fn len(&self) -> u64 {
        1u64 << self.n_bits
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn half(&self) -> u64 {
        self.len() / 2
    }

    fn normalized(mut self) -> Self {
        if self.construction == Construction::Raw {
            return self;
        }
        let half = self.half();
        self.rotation %= half;
        self.post_rotation %= half;
        if self.theta_count == half {
            self.rotation = (self.rotation + self.post_rotation) % half;
            self.post_rotation = 0;
        }
        if self.theta_count == 0 || self.theta_count == self.len() {
            self.rotation = 0;
            self.post_rotation = 0;
        }
        self
    }

    pub fn is_phase_string(&self) -> bool {
        self.theta_count == self.half()
    }

    pub fn zeta(&self, n: i64) -> Self {
        if self.construction == Construction::Raw {
            return self.clone();
        }
        let half = self.half();
        let step = n.rem_euclid(half as i64) as u64;
        OrbitDescriptor { post_rotation: (self.post_rotation + step) % half, ..self.clone() }.normalized()
    }

    /// `i²` maps `S(θ, φ)` to `S(π - θ, φ + π)`.
    pub fn negate(&self) -> Self {
        match self.construction {
            Construction::Raw => OrbitDescriptor { theta_count: self.len() - self.theta_count, ..self.clone() },
            Construction::Canonical => OrbitDescriptor {
                theta_count: self.len() - self.theta_count,
                rotation: self.rotation + self.len() / 4,
                ..self.clone()
            }
            .normalized(),
        }
    }

    /// `i^k`. Odd powers keep the family only on phase strings, where `i = ζ^{2^{N-3}}`.
    pub fn iop(&self, k: i64) -> Option<Self> {
        match k.rem_euclid(4) {
            0 => Some(self.clone()),
            2 => Some(self.negate()),
            k if self.construction == Construction::Canonical && self.is_phase_string() => {
                Some(self.zeta(k * (self.len() / 8) as i64))
            }
            _ => None,
        }
    }

    /// Parameters of the corresponding Hilbert vector.
    pub fn shadow(&self) -> Result<HilbertShadow> {
        if self.construction == Construction::Raw {
            return Err(Error::MissingDescriptor);
        }
        let cos_half_sq = Dyadic::new(self.theta_count, self.n_bits);
        let phi_turns = (self.theta_count != 0 && self.theta_count != self.len()).then(|| {
            Dyadic::new((self.rotation + self.post_rotation) % self.half(), self.n_bits - 1)
        });
        Ok(HilbertShadow { cos_half_sq, phi_turns })
    }

    /// Materialize the string (`N ≤ 24`).
    pub fn expand(&self) -> Result<BitString> {
        if self.construction == Construction::Raw {
            return Err(Error::MissingDescriptor);
        }
        let base = expand_counts(self.n_bits, self.theta_count, self.rotation)?;
        Ok(base.zeta(self.post_rotation as i64))
    }

    /// Label at index `i` without materializing the string; works for any `N ≤ 62`.
    pub fn label_at(&self, i: u64) -> Result<super::Label> {
        if self.construction == Construction::Raw {
            return Err(Error::MissingDescriptor);
        }
        let len = self.len();
        let half = self.half();
        let n = self.n_bits;
        let j = (i % len + 2 * self.post_rotation) % len;
        let start = (2 * self.rotation) % len;
        let phase_bit = canonical_bit(n, (start + j) % len);
        let ones_before = cyclic_ones(n, start, j);
        let bit = if self.theta_count > half {
            let k = self.theta_count - half;
            phase_bit && ones_before >= k
        } else {
            let k = half - self.theta_count;
            let zeros_before = j - ones_before;
            phase_bit || zeros_before < k
        };
        Ok(super::Label::from_bit(bit))
    }
}

/// `¬a` count of the canonical string over the cyclic window `[start, start + width)`.
fn cyclic_ones(n_bits: u32, start: u64, width: u64) -> u64 {
    let len = 1u64 << n_bits;
    let p = |x| canonical_ones_prefix(n_bits, x);
    if start + width <= len {
        p(start + width) - p(start)
    } else {
        p(len) - p(start) + p(start + width - len)
    }
}
