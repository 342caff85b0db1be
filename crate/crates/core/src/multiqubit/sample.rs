use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{Dyadic, Rational};
use crate::samplespace::{BitString, Label};

/// Largest number of rows in a [`MultiSample`].
pub const MAX_QUBITS: usize = 16;

/// `m` aligned strings of `2^N` labels; row 0 is the independent head.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiSample {
    n_bits: u32,
    rows: Vec<BitString>,
}

fn row_tag(r: usize) -> char {
    (b'a' + r as u8) as char
}

impl MultiSample {
    pub fn new(rows: Vec<BitString>) -> Result<Self> {
        let first = rows.first().ok_or_else(|| Error::Precondition("no rows".into()))?;
        if rows.len() > MAX_QUBITS {
            return Err(Error::ResourceLimit(format!("at most {MAX_QUBITS} rows")));
        }
        let n_bits = first.n_bits();
        if let Some(bad) = rows.iter().find(|r| r.n_bits() != n_bits) {
            return Err(Error::LengthMismatch { expected: first.len() as usize, found: bad.len() as usize });
        }
        let rows = rows.into_iter().enumerate().map(|(i, r)| r.with_tag(row_tag(i))).collect();
        Ok(MultiSample { n_bits, rows })
    }

    pub fn single(row: BitString) -> Self {
        MultiSample { n_bits: row.n_bits(), rows: vec![row.with_tag('a')] }
    }

    pub fn n_bits(&self) -> u32 {
        self.n_bits
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitString] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &BitString {
        &self.rows[r]
    }

    /// Apply one permutation to every row.
    pub fn permute(&self, perm: &[u64]) -> Result<MultiSample> {
        let rows = self.rows.iter().map(|r| r.permute(perm)).collect::<Result<Vec<_>>>()?;
        MultiSample::new(rows)
    }
}

/// Literal conditional rule: `b_i = Sb1_i` where `Sa_i = a`, else `Sb2_i`.
pub fn compose_pair(sa: &BitString, sb1: &BitString, sb2: &BitString) -> Result<MultiSample> {
    let b = BitString::select(sa, sb1, sb2)?;
    MultiSample::new(vec![sa.clone(), b])
}

/// `m`-qubit rule: rows `2..m` follow `left` where the head is `a` and `right` where it is `¬a`.
pub fn compose_m(head: &BitString, left: &MultiSample, right: &MultiSample) -> Result<MultiSample> {
    if left.m() != right.m() {
        return Err(Error::Precondition(format!("arity mismatch: {} and {} rows", left.m(), right.m())));
    }
    let mut rows = vec![head.clone()];
    for (l, r) in left.rows.iter().zip(&right.rows) {
        rows.push(BitString::select(head, l, r)?);
    }
    MultiSample::new(rows)
}

/// Counts of each joint outcome; outcome index has row 0 as its most significant bit and
/// bit value 1 for the negated label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointTable {
    pub n_bits: u32,
    pub m: usize,
    pub counts: Vec<u64>,
}

impl JointTable {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn frequencies(&self) -> Vec<Dyadic> {
        self.counts.iter().map(|&c| Dyadic::new(c, self.n_bits)).collect()
    }

    pub fn frequency(&self, outcome: usize) -> Rational {
        Rational::new(self.counts[outcome], 1u64 << self.n_bits)
    }

    /// Columns: outcome bitmask, count, frequency numerator, frequency denominator.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("outcome,count,freq_num,freq_den\n");
        for (o, f) in self.frequencies().iter().enumerate() {
            let r = f.to_rational();
            let _ = writeln!(out, "{:0width$b},{},{},{}", o, self.counts[o], r.numer(), r.denom(), width = self.m);
        }
        out
    }
}

/// Mask of positions where each row takes the outcome's label, ANDed together.
fn outcome_words(rows: &[BitString], outcome: usize) -> Vec<u64> {
    let m = rows.len();
    let words = rows[0].words().len();
    let len = rows[0].len();
    let tail = if len >= 64 { u64::MAX } else { (1u64 << len) - 1 };
    let mut acc = vec![tail; words];
    for (r, row) in rows.iter().enumerate() {
        let neg = (outcome >> (m - 1 - r)) & 1 == 1;
        for (a, w) in acc.iter_mut().zip(row.words()) {
            *a &= if neg { *w } else { !*w };
        }
    }
    acc
}

pub fn joint_counts(ms: &MultiSample) -> JointTable {
    let counts = (0..1usize << ms.m())
        .map(|o| outcome_words(&ms.rows, o).iter().map(|w| w.count_ones() as u64).sum())
        .collect();
    JointTable { n_bits: ms.n_bits, m: ms.m(), counts }
}

/// Jointly permute `rows` so that on the positions where `head` carries `target`, every
/// joint outcome of `rows` occurs in the same proportion as on the whole string.
///
/// This is how independence of the head from the other rows is realized at finite `N`.
/// It needs `n_cell · n_target / 2^N` to be an integer for every cell; otherwise the joint
/// probabilities are not describable by `N` bits.
pub fn align_rows(head: &BitString, rows: &[BitString], target: Label) -> Result<Vec<BitString>> {
    let ms = MultiSample::new(rows.to_vec())?;
    if ms.n_bits != head.n_bits() {
        return Err(Error::LengthMismatch { expected: head.len() as usize, found: rows[0].len() as usize });
    }
    let len = head.len();
    let m = rows.len();
    let t = if target == Label::A { head.count_a() } else { head.count_not_a() };
    let cells = joint_counts(&ms).counts;
    let mut quota_t = Vec::with_capacity(cells.len());
    for (c, &n_c) in cells.iter().enumerate() {
        let prod = n_c as u128 * t as u128;
        if prod % len as u128 != 0 {
            return Err(Error::NotOnInvariantSet(format!(
                "joint frequency {n_c}/{len} x {t}/{len} (cell {c:b}) is not describable by {} bits",
                head.n_bits()
            )));
        }
        quota_t.push((prod / len as u128) as u64);
    }
    let quota_o: Vec<u64> = cells.iter().zip(&quota_t).map(|(n, k)| n - k).collect();
    let mut words = vec![vec![0u64; head.words().len()]; m];
    let (mut ct, mut co) = (0usize, 0usize);
    let (mut left_t, mut left_o) = (quota_t.clone(), quota_o.clone());
    for i in 0..len {
        let in_t = head.get(i) == target;
        let (cell, left) = if in_t { (&mut ct, &mut left_t) } else { (&mut co, &mut left_o) };
        while left[*cell] == 0 {
            *cell += 1;
        }
        left[*cell] -= 1;
        for (r, w) in words.iter_mut().enumerate() {
            if (*cell >> (m - 1 - r)) & 1 == 1 {
                w[(i / 64) as usize] |= 1 << (i % 64);
            }
        }
    }
    Ok(words
        .into_iter()
        .zip(rows)
        .map(|(w, orig)| BitString::from_words(head.n_bits(), w, None).with_tag(orig.tag()))
        .collect())
}
