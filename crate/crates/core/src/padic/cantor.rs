use serde::Serialize;

use super::PadicInt;
use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// Largest number of intervals `cantor_iterates` will materialize.
pub const MAX_CANTOR_INTERVALS: u64 = 1 << 20;

/// One level-`k` interval of `C(p)`, selected by the path of kept subintervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CantorInterval {
    pub level: usize,
    pub path: Vec<u64>,
    pub left: Rational,
    pub right: Rational,
}

impl CantorInterval {
    pub fn width(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.left <= x && x <= &self.right
    }

    pub fn contains_interval(&self, other: &CantorInterval) -> bool {
        self.left <= other.left && other.right <= self.right
    }
}

/// The interval reached by keeping subinterval `2·c` of `2p - 1` at each step `c` of `path`.
pub fn cantor_interval(p: u64, path: &[u64]) -> CantorInterval {
    let base = Rational::from(2 * p as i64 - 1);
    let mut left = Rational::zero();
    let mut scale = Rational::one();
    for &c in path {
        scale = &scale / &base;
        left = &left + &(&scale * &Rational::from(2 * c as i64));
    }
    CantorInterval {
        level: path.len(),
        path: path.to_vec(),
        right: &left + &scale,
        left,
    }
}

/// `F_p(z)` truncated to the digits of `z`: `Σ 2a_k/(2p-1)^{k+1}`.
pub fn cantor_map(z: &PadicInt) -> Rational {
    cantor_interval(z.prime(), z.digits()).left
}

/// All level-`k` intervals and the similarity dimension `log p / log(2p - 1)`.
#[derive(Clone, Debug, Serialize)]
pub struct CantorIterates {
    pub p: u64,
    pub level: usize,
    pub intervals: Vec<CantorInterval>,
    pub similarity_dimension: f64,
}

/// Level-`k` iterate of `C(p)`. `p` need not be prime here.
pub fn cantor_iterates(p: u64, k: usize) -> Result<CantorIterates> {
    if p < 2 {
        return Err(Error::Precondition(format!("Cantor parameter must be at least 2, got {p}")));
    }
    let count = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count > MAX_CANTOR_INTERVALS as u128 {
        return Err(Error::ResourceLimit(format!("{p}^{k} intervals exceeds {MAX_CANTOR_INTERVALS}")));
    }
    let mut paths: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..k {
        paths = paths
            .into_iter()
            .flat_map(|path| {
                (0..p).map(move |c| {
                    let mut next = path.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    Ok(CantorIterates {
        p,
        level: k,
        intervals: paths.iter().map(|path| cantor_interval(p, path)).collect(),
        similarity_dimension: (p as f64).ln() / ((2 * p - 1) as f64).ln(),
    })
}
