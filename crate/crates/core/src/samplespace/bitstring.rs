use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::descriptor::{Construction, OrbitDescriptor};
use crate::error::{Error, Result};
use crate::exactmath::Dyadic;

/// Smallest `N` for which the canonical construction exists.
pub const MIN_BITS: u32 = 3;
/// Largest `N` for which strings are materialized; beyond this only descriptors exist.
pub const MAX_EXPLICIT_BITS: u32 = 24;

const EVEN: u64 = 0x5555_5555_5555_5555;
const ODD: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// One of the two regimes a trajectory can be attracted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    A,
    NotA,
}

impl Label {
    pub fn from_bit(bit: bool) -> Label {
        if bit { Label::NotA } else { Label::A }
    }

    pub fn bit(self) -> bool {
        self == Label::NotA
    }

    pub fn negate(self) -> Label {
        Label::from_bit(!self.bit())
    }
}

/// An ordered string of `2^N` labels, bit-packed with `a = 0`, `¬a = 1`.
///
/// The `tag` names the regime pair (`'a'` for `a/¬a`, `'b'` for `b/¬b`, ...). A string built
/// by the canonical construction carries an [`OrbitDescriptor`] that the operators keep up
/// to date where the result stays inside the constructed family.
#[derive(Clone)]
pub struct BitString {
    n_bits: u32,
    words: Vec<u64>,
    tag: char,
    descriptor: Option<OrbitDescriptor>,
}

fn check_bits(n_bits: u32) -> Result<()> {
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

fn word_count(len: u64) -> usize {
    len.div_ceil(64) as usize
}

fn tail_mask(len: u64) -> u64 {
    if len >= 64 { u64::MAX } else { (1u64 << len) - 1 }
}

impl BitString {
    /// All labels equal to `fill`.
    pub fn filled(n_bits: u32, fill: Label) -> Result<Self> {
        check_bits(n_bits)?;
        let len = 1u64 << n_bits;
        let w = if fill.bit() { tail_mask(len) } else { 0 };
        Ok(BitString { n_bits, words: vec![w; word_count(len)], tag: 'a', descriptor: None })
    }

    pub fn from_labels(n_bits: u32, labels: &[Label]) -> Result<Self> {
        let mut s = BitString::filled(n_bits, Label::A)?;
        if labels.len() as u64 != s.len() {
            return Err(Error::LengthMismatch { expected: s.len() as usize, found: labels.len() });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.bit() {
                s.words[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(s)
    }

    /// Parse `'0'`/`'1'` characters in index order. The length fixes `N`.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let len = bits.len() as u64;
        if !len.is_power_of_two() {
            return Err(Error::Parse(format!("length {len} is not a power of two")));
        }
        let labels = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(Label::A),
                '1' => Ok(Label::NotA),
                _ => Err(Error::Parse(format!("unexpected character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BitString::from_labels(len.trailing_zeros(), &labels)
    }

    pub(crate) fn from_words(n_bits: u32, words: Vec<u64>, descriptor: Option<OrbitDescriptor>) -> Self {
        debug_assert_eq!(words.len(), word_count(1u64 << n_bits));
        BitString { n_bits, words, tag: 'a', descriptor }
    }

    pub fn n_bits(&self) -> u32 {
        self.n_bits
    }

    pub fn len(&self) -> u64 {
        1u64 << self.n_bits
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tag(&self) -> char {
        self.tag
    }

    pub fn with_tag(mut self, tag: char) -> Self {
        self.tag = tag;
        self
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: u64) -> Label {
        Label::from_bit(self.words[(i / 64) as usize] >> (i % 64) & 1 == 1)
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Number of `¬a` labels.
    pub fn count_not_a(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Number of `a` labels.
    pub fn count_a(&self) -> u64 {
        self.len() - self.count_not_a()
    }

    /// Exact frequency of `a`: `count_a / 2^N`.
    pub fn fraction(&self) -> Dyadic {
        Dyadic::new(self.count_a(), self.n_bits)
    }

    /// The constructed descriptor, if this string came from the canonical construction.
    pub fn descriptor(&self) -> Option<&OrbitDescriptor> {
        self.descriptor.as_ref()
    }

    /// Descriptor record for export: the constructed one, or a raw record of the counts.
    pub fn descriptor_record(&self) -> OrbitDescriptor {
        self.descriptor.clone().unwrap_or(OrbitDescriptor {
            n_bits: self.n_bits,
            rotation: 0,
            theta_count: self.count_a(),
            post_rotation: 0,
            construction: Construction::Raw,
        })
    }

    /// Forget the descriptor, e.g. after an arbitrary permutation.
    pub fn into_raw(mut self) -> Self {
        self.descriptor = None;
        self
    }

    /// Rotate left by `positions`: label `i` of the result is label `i + positions`.
    pub(crate) fn rotate_left_raw(&self, positions: u64) -> Vec<u64> {
        let len = self.len();
        let s = positions % len;
        if s == 0 {
            return self.words.clone();
        }
        if len < 64 {
            let w = self.words[0];
            return vec![((w >> s) | (w << (len - s))) & tail_mask(len)];
        }
        let n = self.words.len();
        let q = (s / 64) as usize;
        let r = (s % 64) as u32;
        (0..n)
            .map(|i| {
                let lo = self.words[(i + q) % n];
                if r == 0 {
                    lo
                } else {
                    let hi = self.words[(i + q + 1) % n];
                    (lo >> r) | (hi << (64 - r))
                }
            })
            .collect()
    }

    /// `ζ^n`: rotate left by `2n` positions. `ζ^{2^{N-1}}` is the identity.
    pub fn zeta(&self, n: i64) -> BitString {
        let period = self.len() / 2;
        let steps = n.rem_euclid(period as i64) as u64;
        BitString {
            n_bits: self.n_bits,
            words: self.rotate_left_raw(2 * steps),
            tag: self.tag,
            descriptor: self.descriptor.as_ref().map(|d| d.zeta(n)),
        }
    }

    /// `i^n`: each pair `(x, y)` at positions `(2j, 2j+1)` becomes `(¬y, x)` per application.
    pub fn iop(&self, n: i64) -> BitString {
        let k = n.rem_euclid(4);
        let mask = tail_mask(self.len());
        let mut words = self.words.clone();
        for _ in 0..k {
            for w in words.iter_mut() {
                *w = ((!(*w >> 1) & EVEN) | ((*w << 1) & ODD)) & mask;
            }
        }
        BitString {
            n_bits: self.n_bits,
            words,
            tag: self.tag,
            descriptor: self.descriptor.as_ref().and_then(|d| d.iop(k)),
        }
    }

    /// Elementwise negation, equal to `i²`.
    pub fn negate(&self) -> BitString {
        let mask = tail_mask(self.len());
        BitString {
            n_bits: self.n_bits,
            words: self.words.iter().map(|w| !w & mask).collect(),
            tag: self.tag,
            descriptor: self.descriptor.as_ref().map(|d| d.negate()),
        }
    }

    /// Apply a permutation: label `i` of the result is label `perm[i]` of `self`.
    pub fn permute(&self, perm: &[u64]) -> Result<BitString> {
        if perm.len() as u64 != self.len() {
            return Err(Error::LengthMismatch { expected: self.len() as usize, found: perm.len() });
        }
        let mut words = vec![0u64; self.words.len()];
        for (i, &src) in perm.iter().enumerate() {
            if self.get(src).bit() {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(BitString { n_bits: self.n_bits, words, tag: self.tag, descriptor: None })
    }

    /// Positionwise choice: `self` where `head` is `a`, `other` where it is `¬a`.
    pub fn select(head: &BitString, if_a: &BitString, if_not_a: &BitString) -> Result<BitString> {
        for s in [if_a, if_not_a] {
            if s.n_bits != head.n_bits {
                return Err(Error::LengthMismatch { expected: head.len() as usize, found: s.len() as usize });
            }
        }
        let words = head
            .words
            .iter()
            .zip(if_a.words.iter().zip(&if_not_a.words))
            .map(|(h, (x, y))| (!h & x) | (h & y))
            .collect();
        Ok(BitString { n_bits: head.n_bits, words, tag: if_a.tag, descriptor: None })
    }

    /// Number of indices where the two strings carry the same label.
    pub fn agreements(&self, other: &BitString) -> Result<u64> {
        if self.n_bits != other.n_bits {
            return Err(Error::LengthMismatch { expected: self.len() as usize, found: other.len() as usize });
        }
        let diff: u64 = self.words.iter().zip(&other.words).map(|(a, b)| (a ^ b).count_ones() as u64).sum();
        Ok(self.len() - diff)
    }

    /// `'0'`/`'1'` characters in index order.
    pub fn to_bits(&self) -> String {
        self.labels().map(|l| if l.bit() { '1' } else { '0' }).collect()
    }
}

impl PartialEq for BitString {
    /// Label equality; tags and descriptors are metadata.
    fn eq(&self, other: &Self) -> bool {
        self.n_bits == other.n_bits && self.words == other.words
    }
}

impl Eq for BitString {}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bits())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_bits <= 6 {
            write!(f, "BitString({})", self.to_bits())
        } else {
            write!(f, "BitString(N={}, count_a={})", self.n_bits, self.count_a())
        }
    }
}

impl FromStr for BitString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BitString::from_bits(s.trim())
    }
}

#[derive(Serialize)]
struct BitStringRecord<'a> {
    n_bits: u32,
    tag: String,
    bits: String,
    descriptor: &'a Option<OrbitDescriptor>,
}

impl Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BitStringRecord {
            n_bits: self.n_bits,
            tag: self.tag.to_string(),
            bits: self.to_bits(),
            descriptor: &self.descriptor,
        }
        .serialize(s)
    }
}
