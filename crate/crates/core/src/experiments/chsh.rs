use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::substitute::{default_window, nearest_admissible, sin_sign, Substitution};
use crate::error::Result;
use crate::exactmath::{sum_verdict, ExactAngle, ExclusionReason, HighPrecision, Rational, SumVerdict};
use crate::multiqubit::bell_sample;
use crate::par::{self, Execution};

/// Alice's settings `A1, A2` and Bob's `B1, B2`, in turns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChshConfig {
    pub n_bits: u32,
    pub a1: ExactAngle,
    pub a2: ExactAngle,
    pub b1: ExactAngle,
    pub b2: ExactAngle,
    /// Substitution window in turns; `2^{-(N-2)}` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Rational>,
}

impl ChshConfig {
    /// `A = (0, 1/4)`, `B = (1/8, 3/8)`: relative angles `±1/8` and `3/8` turns.
    pub fn optimal(n_bits: u32) -> Self {
        ChshConfig {
            n_bits,
            a1: ExactAngle::zero(),
            a2: ExactAngle::turns_ratio(1, 4),
            b1: ExactAngle::turns_ratio(1, 8),
            b2: ExactAngle::turns_ratio(3, 8),
            window: None,
        }
    }

    pub fn window(&self) -> Rational {
        self.window.clone().unwrap_or_else(|| default_window(self.n_bits))
    }

    fn alice(&self, i: usize) -> &ExactAngle {
        [&self.a1, &self.a2][i]
    }

    fn bob(&self, j: usize) -> &ExactAngle {
        [&self.b1, &self.b2][j]
    }
}

/// `(Alice, Bob)` button indices in report order.
pub const PAIRS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

pub fn pair_label(i: usize, j: usize) -> String {
    format!("A{}B{}", i + 1, j + 1)
}

/// One sub-experiment on its own ensemble.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubEnsemble {
    pub pair: String,
    pub relative: Substitution,
    pub agreements: u64,
    pub total: u64,
    pub correlation: Rational,
    pub correlation_display: f64,
}

/// Why a counterfactual setting is or is not on the invariant set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    Actual,
    Describable,
    PythagoreanObstruction,
    IrrationalSine,
}

impl Admissibility {
    pub fn as_str(self) -> &'static str {
        match self {
            Admissibility::Actual => "actual",
            Admissibility::Describable => "describable",
            Admissibility::PythagoreanObstruction => "pythagorean_obstruction",
            Admissibility::IrrationalSine => "irrational_sine",
        }
    }
}

impl From<ExclusionReason> for Admissibility {
    fn from(r: ExclusionReason) -> Self {
        match r {
            ExclusionReason::IrrationalSine => Admissibility::IrrationalSine,
            ExclusionReason::PythagoreanObstruction => Admissibility::PythagoreanObstruction,
        }
    }
}

/// Whether the setting `counterfactual` could have been measured on the ensemble
/// where `actual` was.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterfactualEntry {
    pub actual: String,
    pub counterfactual: String,
    pub excluded: bool,
    pub reason: Admissibility,
    /// The re-measurement rotation taking the actual relative angle to the counterfactual one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<Substitution>,
    /// `cos` of the counterfactual relative angle, when describable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cos: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChshReport {
    pub config: ChshConfig,
    pub window: Rational,
    pub sub_ensembles: Vec<SubEnsemble>,
    /// `|C(A1,B1) - C(A1,B2)| + |C(A2,B1) + C(A2,B2)|`.
    pub s: Rational,
    pub s_display: f64,
    /// Rows: actual pair; columns: counterfactual pair, both in [`PAIRS`] order.
    pub counterfactuals: Vec<Vec<CounterfactualEntry>>,
}

impl ChshReport {
    pub fn correlations(&self) -> [Rational; 4] {
        std::array::from_fn(|k| self.sub_ensembles[k].correlation.clone())
    }

    pub fn sub_ensemble_csv(&self) -> String {
        let mut out = String::from(
            "pair,requested_turns,cos_used,substituted,deviation_turns,agreements,total,correlation,correlation_display\n",
        );
        for s in &self.sub_ensembles {
            let _ = writeln!(
                out,
                "{},{},{},{},{:e},{},{},{},{}",
                s.pair,
                s.relative.requested.turns(),
                s.relative.cos,
                s.relative.substituted,
                s.relative.deviation_turns,
                s.agreements,
                s.total,
                s.correlation,
                s.correlation_display
            );
        }
        out
    }

    pub fn counterfactual_csv(&self) -> String {
        let mut out = String::from("actual,counterfactual,excluded,reason\n");
        for e in self.counterfactuals.iter().flatten() {
            let _ = writeln!(out, "{},{},{},{}", e.actual, e.counterfactual, e.excluded, e.reason.as_str());
        }
        out
    }
}

pub fn chsh_run(cfg: &ChshConfig) -> Result<ChshReport> {
    chsh_run_with(cfg, Execution::default())
}

/// Four sub-experiments, each on a freshly constructed Bell ensemble at the nearest
/// admissible relative angle, plus the counterfactual matrix.
pub fn chsh_run_with(cfg: &ChshConfig, exec: Execution) -> Result<ChshReport> {
    let window = cfg.window();
    let hp = &mut HighPrecision::default();
    let relative = |i: usize, j: usize| cfg.bob(j) - cfg.alice(i);
    let subs = PAIRS
        .iter()
        .map(|&(i, j)| nearest_admissible(&relative(i, j), cfg.n_bits, &window, hp))
        .collect::<Result<Vec<_>>>()?;
    let n_bits = cfg.n_bits;
    let sub_ensembles = par::map(exec, &PAIRS.iter().zip(subs).collect::<Vec<_>>(), |(&(i, j), sub)| {
        let ms = bell_sample(&sub.angle(), n_bits)?;
        let agreements = ms.row(0).agreements(ms.row(1))?;
        let total = ms.row(0).len();
        let correlation = Rational::new(2 * agreements as i64 - total as i64, total as i64);
        Ok(SubEnsemble {
            pair: pair_label(i, j),
            relative: sub.clone(),
            agreements,
            total,
            correlation_display: correlation.to_f64(),
            correlation,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let c: Vec<&Rational> = sub_ensembles.iter().map(|s| &s.correlation).collect();
    let s = (c[0] - c[1]).abs() + (c[2] + c[3]).abs();

    let mut counterfactuals = Vec::with_capacity(4);
    for (r, &(i, j)) in PAIRS.iter().enumerate() {
        let mut row = Vec::with_capacity(4);
        for &(k, l) in &PAIRS {
            row.push(counterfactual(cfg, &sub_ensembles[r], (i, j), (k, l), &window, hp)?);
        }
        counterfactuals.push(row);
    }
    Ok(ChshReport { config: cfg.clone(), window, sub_ensembles, s_display: s.to_f64(), s, counterfactuals })
}

fn counterfactual(
    cfg: &ChshConfig,
    actual: &SubEnsemble,
    (i, j): (usize, usize),
    (k, l): (usize, usize),
    window: &Rational,
    hp: &mut HighPrecision,
) -> Result<CounterfactualEntry> {
    let mut entry = CounterfactualEntry {
        actual: pair_label(i, j),
        counterfactual: pair_label(k, l),
        excluded: false,
        reason: Admissibility::Actual,
        offset: None,
        cos: Some(actual.relative.cos.clone()),
    };
    if (i, j) == (k, l) {
        return Ok(entry);
    }
    // θ_kl = θ_ij + (A_i - A_k) + (B_l - B_j).
    let offset = &(cfg.alice(i) - cfg.alice(k)) + &(cfg.bob(l) - cfg.bob(j));
    let offset = nearest_admissible(&offset, cfg.n_bits, window, hp)?;
    let same_sign = sin_sign(&offset.requested) * sin_sign(&actual.relative.requested) >= 0;
    let verdict = sum_verdict(&offset.cos, &actual.relative.cos, same_sign, cfg.n_bits)?;
    entry.offset = Some(offset);
    match verdict {
        SumVerdict::BothAdmissible { sum_cos } => {
            entry.reason = Admissibility::Describable;
            entry.cos = Some(sum_cos);
        }
        SumVerdict::SumExcluded { reason } => {
            entry.excluded = true;
            entry.reason = reason.into();
            entry.cos = None;
        }
    }
    Ok(entry)
}

/// Whether `cos(θ_{A1A2} + θ_{A2B1})` stays describable given describable parts.
pub fn chsh_admissibility(cos_a1a2: &Rational, cos_a2b1: &Rational, n_bits: u32) -> Result<SumVerdict> {
    sum_verdict(cos_a1a2, cos_a2b1, true, n_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::exactmath::rat;

    #[test]
    fn aligned_settings_give_two() {
        let z = ExactAngle::zero();
        let cfg = ChshConfig { n_bits: 6, a1: z.clone(), a2: z.clone(), b1: z.clone(), b2: z, window: None };
        let r = chsh_run(&cfg).unwrap();
        assert_eq!(r.s, rat(2, 1));
        assert!(r.sub_ensembles.iter().all(|s| !s.relative.substituted));
    }

    #[test]
    fn optimal_settings_near_tsirelson() {
        let r = chsh_run(&ChshConfig::optimal(12)).unwrap();
        assert!((r.s_display - 2.0 * 2f64.sqrt()).abs() < 1e-3);
        for s in &r.sub_ensembles {
            assert_eq!(s.correlation, s.relative.cos);
        }
        let c = r.correlations();
        assert_eq!(r.s, (&c[0] - &c[1]).abs() + (&c[2] + &c[3]).abs());
        // The single-button swaps are all excluded.
        for (a, b) in [(0, 1), (0, 2), (2, 0), (2, 3), (1, 0), (3, 2)] {
            let e = &r.counterfactuals[a][b];
            assert!(e.excluded, "{} -> {}", e.actual, e.counterfactual);
            assert_eq!(e.reason, Admissibility::IrrationalSine);
        }
        assert_eq!(r.counterfactuals[1][1].reason, Admissibility::Actual);
    }

    #[test]
    fn no_admissible_angle() {
        let mut cfg = ChshConfig::optimal(10);
        cfg.b1 = ExactAngle::turns_ratio(1, 7);
        cfg.window = Some(Rational::pow2_inv(40));
        assert!(matches!(chsh_run(&cfg), Err(Error::NoAdmissibleAngle { .. })));
    }

    #[test]
    fn admissibility_examples() {
        let v = chsh_admissibility(&rat(1, 2), &rat(3, 4), 4).unwrap();
        assert_eq!(v.reason(), Some(ExclusionReason::IrrationalSine));
        let v = chsh_admissibility(&rat(1, 1), &rat(3, 4), 4).unwrap();
        assert!(!v.is_excluded());
    }

    #[test]
    fn sequential_matches_parallel() {
        let cfg = ChshConfig::optimal(8);
        assert_eq!(
            chsh_run_with(&cfg, Execution::Sequential).unwrap(),
            chsh_run_with(&cfg, Execution::Parallel).unwrap()
        );
    }
}
