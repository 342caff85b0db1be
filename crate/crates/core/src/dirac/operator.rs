use std::fmt;

use num_complex::Complex;
use serde::Serialize;

use crate::exactmath::{ExactAngle, Rational};

/// Gaussian integer used for the sign/permutation skeleton.
pub type Skeleton = [[Complex<i64>; 4]; 4];

/// A formal entry `i^k ∘ ζ^{e_1} ∘ ζ^{e_2} ∘ …`.
///
/// The exponent factors are kept separately so that the skeleton of a product can be read
/// off at the order of its factors; the action only needs their sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FormalEntry {
    pub ipow: u8,
    pub factors: Vec<i64>,
}

impl FormalEntry {
    pub fn new(ipow: u8, exponent: i64) -> Self {
        FormalEntry { ipow: ipow % 4, factors: vec![exponent] }
    }

    pub fn one() -> Self {
        FormalEntry { ipow: 0, factors: vec![] }
    }

    /// Total `ζ` exponent.
    pub fn zeta_exponent(&self) -> i64 {
        self.factors.iter().sum()
    }

    pub fn compose(&self, other: &FormalEntry) -> FormalEntry {
        let mut factors = self.factors.clone();
        factors.extend(&other.factors);
        FormalEntry { ipow: (self.ipow + other.ipow) % 4, factors }
    }

    /// `i^k · Π sign(e_j)`; `None` when a factor is `ζ^0` and carries no sign.
    pub fn skeleton(&self) -> Option<Complex<i64>> {
        let mut z = i_power(self.ipow);
        for &e in &self.factors {
            if e == 0 {
                return None;
            }
            z *= e.signum();
        }
        Some(z)
    }

    /// Phase in turns under `ζ ↦ e^{2πi/2^{N-1}}`, `i ↦ e^{iπ/2}`.
    pub fn turns(&self, n_bits: u32) -> ExactAngle {
        let e = Rational::new(self.zeta_exponent(), 1i64 << (n_bits - 1));
        ExactAngle::from_turns(Rational::new(self.ipow as i64, 4) + e)
    }
}

pub(crate) fn i_power(k: u8) -> Complex<i64> {
    match k % 4 {
        0 => Complex::new(1, 0),
        1 => Complex::new(0, 1),
        2 => Complex::new(-1, 0),
        _ => Complex::new(0, -1),
    }
}

/// A 4×4 generalized permutation matrix of formal entries: row `r` has its single
/// nonzero entry in column `perm[r]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalOperatorMatrix {
    pub perm: [usize; 4],
    pub entries: [FormalEntry; 4],
}

impl FormalOperatorMatrix {
    pub fn identity() -> Self {
        FormalOperatorMatrix {
            perm: [0, 1, 2, 3],
            entries: [FormalEntry::one(), FormalEntry::one(), FormalEntry::one(), FormalEntry::one()],
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &FormalOperatorMatrix) -> FormalOperatorMatrix {
        let mut perm = [0; 4];
        let entries = std::array::from_fn(|r| {
            let c = self.perm[r];
            perm[r] = other.perm[c];
            self.entries[r].compose(&other.entries[c])
        });
        FormalOperatorMatrix { perm, entries }
    }

    pub fn pow(&self, k: u32) -> FormalOperatorMatrix {
        (0..k).fold(FormalOperatorMatrix::identity(), |acc, _| acc.mul(self))
    }

    pub fn is_generalized_permutation(&self) -> bool {
        let mut seen = [false; 4];
        self.perm.iter().all(|&c| c < 4 && !std::mem::replace(&mut seen[c], true))
    }

    /// Sign/permutation skeleton, if every factor carries a sign.
    pub fn skeleton(&self) -> Option<Skeleton> {
        let mut out = [[Complex::new(0, 0); 4]; 4];
        for r in 0..4 {
            out[r][self.perm[r]] = self.entries[r].skeleton()?;
        }
        Some(out)
    }

    /// Skeleton reading only the `i` powers (all `ζ` factors mapped to one).
    pub fn i_skeleton(&self) -> Skeleton {
        let mut out = [[Complex::new(0, 0); 4]; 4];
        for r in 0..4 {
            out[r][self.perm[r]] = i_power(self.entries[r].ipow);
        }
        out
    }
}

impl fmt::Display for FormalOperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..4 {
            let cells: Vec<String> = (0..4)
                .map(|c| {
                    if self.perm[r] != c {
                        return "0".into();
                    }
                    let e = &self.entries[r];
                    let i = ["", "i", "-", "-i"][e.ipow as usize];
                    format!("{i}z^{}", e.zeta_exponent())
                })
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Complex product of two skeletons.
pub fn skeleton_mul(a: &Skeleton, b: &Skeleton) -> Skeleton {
    let mut out = [[Complex::new(0, 0); 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = (0..4).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

/// `E_μ` with `n` steps, transcribed entry by entry.
///
/// `E_0 = diag(ζ^n, ζ^n, ζ^{-n}, ζ^{-n})`; `E_1` anti-diagonal `ζ^n, ζ^n, ζ^{-n}, ζ^{-n}`;
/// `E_2` anti-diagonal `iζ^{-n}, iζ^n, iζ^n, iζ^{-n}`; `E_3` with `ζ^n` at (1,3), `ζ^{-n}`
/// at (2,4) and (3,1), `ζ^n` at (4,2).
pub fn build_e(mu: usize, n: i64) -> FormalOperatorMatrix {
    let e = |k: u8, s: i64| FormalEntry::new(k, s * n);
    match mu {
        0 => FormalOperatorMatrix { perm: [0, 1, 2, 3], entries: [e(0, 1), e(0, 1), e(0, -1), e(0, -1)] },
        1 => FormalOperatorMatrix { perm: [3, 2, 1, 0], entries: [e(0, 1), e(0, 1), e(0, -1), e(0, -1)] },
        2 => FormalOperatorMatrix { perm: [3, 2, 1, 0], entries: [e(1, -1), e(1, 1), e(1, 1), e(1, -1)] },
        3 => FormalOperatorMatrix { perm: [2, 3, 0, 1], entries: [e(0, 1), e(0, -1), e(0, -1), e(0, 1)] },
        _ => panic!("mu must be 0..=3, got {mu}"),
    }
}

/// The Dirac-representation gamma matrices `γ_0 … γ_3`.
pub fn gamma_matrices() -> [Skeleton; 4] {
    let z = Complex::new(0, 0);
    let one = Complex::new(1, 0);
    let i = Complex::new(0, 1);
    let mut g = [[[z; 4]; 4]; 4];
    g[0][0][0] = one;
    g[0][1][1] = one;
    g[0][2][2] = -one;
    g[0][3][3] = -one;
    g[1][0][3] = one;
    g[1][1][2] = one;
    g[1][2][1] = -one;
    g[1][3][0] = -one;
    g[2][0][3] = -i;
    g[2][1][2] = i;
    g[2][2][1] = i;
    g[2][3][0] = -i;
    g[3][0][2] = one;
    g[3][1][3] = -one;
    g[3][2][0] = -one;
    g[3][3][1] = one;
    g
}

/// Positions where the skeleton of `build_e(μ, 1)` differs from `γ_μ`, as `(μ, row, col)`.
pub fn conventions_diagnostic() -> Vec<(usize, usize, usize)> {
    let gammas = gamma_matrices();
    let mut out = Vec::new();
    for (mu, g) in gammas.iter().enumerate() {
        let s = build_e(mu, 1).skeleton().expect("nonzero steps");
        for r in 0..4 {
            for c in 0..4 {
                if s[r][c] != g[r][c] {
                    out.push((mu, r, c));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: i64) -> Skeleton {
        let mut out = [[Complex::new(0, 0); 4]; 4];
        for (r, row) in out.iter_mut().enumerate() {
            row[r] = Complex::new(v, 0);
        }
        out
    }

    #[test]
    fn skeletons_are_gammas() {
        let g = gamma_matrices();
        for mu in 0..4 {
            assert_eq!(build_e(mu, 1).skeleton().unwrap(), g[mu], "mu = {mu}");
            assert_eq!(build_e(mu, 5).skeleton().unwrap(), g[mu]);
        }
        assert!(conventions_diagnostic().is_empty());
    }

    #[test]
    fn squares() {
        for mu in 1..4 {
            assert_eq!(build_e(mu, 3).pow(2).skeleton().unwrap(), diag(-1), "mu = {mu}");
        }
        assert_eq!(build_e(0, 3).pow(2).skeleton().unwrap(), diag(1));
        // The formal square is the identity permutation with cancelling exponents.
        let sq = build_e(1, 3).pow(2);
        assert_eq!(sq.perm, [0, 1, 2, 3]);
        assert!(sq.entries.iter().all(|e| e.zeta_exponent() == 0 && e.ipow == 0));
    }

    #[test]
    fn anticommutation() {
        let g = gamma_matrices();
        for a in 0..4 {
            for b in 0..4 {
                let ab = skeleton_mul(&g[a], &g[b]);
                let ba = skeleton_mul(&g[b], &g[a]);
                let expect = if a != b { 0 } else if a == 0 { 2 } else { -2 };
                for r in 0..4 {
                    for c in 0..4 {
                        let want = if r == c { expect } else { 0 };
                        assert_eq!(ab[r][c] + ba[r][c], Complex::new(want, 0));
                    }
                }
            }
        }
    }

    #[test]
    fn closure() {
        let mut m = FormalOperatorMatrix::identity();
        for k in 0..20 {
            m = m.mul(&build_e(k % 4, k as i64 - 7));
            assert!(m.is_generalized_permutation());
            assert!(m.entries.iter().all(|e| e.ipow < 4));
        }
    }

    #[test]
    fn zero_step_spatial_product_has_order_four() {
        let p = build_e(1, 0).mul(&build_e(2, 0)).mul(&build_e(3, 0));
        assert_eq!(p.perm, [2, 3, 0, 1]);
        assert!(p.entries.iter().all(|e| e.ipow == 1));
        assert_eq!(p.pow(2).perm, [0, 1, 2, 3]);
        assert!(p.pow(2).entries.iter().all(|e| e.ipow == 2));
        assert!(p.pow(4).entries.iter().all(|e| e.ipow == 0));
    }
}
