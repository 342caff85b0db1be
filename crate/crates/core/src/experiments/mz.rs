use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Angle, ExactAngle, Rational};
use crate::par::{self, Execution};
use crate::samplespace::{phase_rotation, sample, theta_count};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MzMode {
    WhichWay,
    Interference,
}

impl MzMode {
    pub fn other(self) -> MzMode {
        match self {
            MzMode::WhichWay => MzMode::Interference,
            MzMode::Interference => MzMode::WhichWay,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MzConfig {
    pub mode: MzMode,
    /// Phase shift: `"m/n"` turns or `{"cos": "m/n"}`.
    pub phi: Angle,
    pub n_bits: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Detector {
    pub name: String,
    pub probability: Rational,
    pub display: f64,
}

/// Which of the two gates `φ` passes at `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MzGates {
    /// `φ/2π = n / 2^{N-1}`.
    pub which_way: bool,
    /// `cos²(φ/2) = n / 2^N`.
    pub interference: bool,
}

impl MzGates {
    pub fn passes(&self, mode: MzMode) -> bool {
        match mode {
            MzMode::WhichWay => self.which_way,
            MzMode::Interference => self.interference,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MzReport {
    pub config: MzConfig,
    pub detectors: Vec<Detector>,
    pub count_a: u64,
    pub total: u64,
    pub gates: MzGates,
    /// The other arrangement on the same `φ`.
    pub counterfactual_mode: MzMode,
    pub counterfactual_admissible: bool,
    /// Largest gap between string frequencies and the `U`, `V` matrix action in `f64`.
    pub unitary_gap: f64,
}

/// Exact turns of an angle, when rational. Cosine-specified angles have rational turns
/// only at `cos ∈ {0, ±1/2, ±1}`.
pub fn rational_turns(phi: &Angle) -> Option<ExactAngle> {
    match phi {
        Angle::Turns(t) => Some(t.clone()),
        Angle::Cosine(c) => {
            let two_c = c * &Rational::from(2);
            let t = [(2i64, (0i64, 1i64)), (1, (1, 6)), (0, (1, 4)), (-1, (1, 3)), (-2, (1, 2))]
                .into_iter()
                .find(|&(k, _)| two_c == k)?
                .1;
            Some(ExactAngle::turns_ratio(t.0, t.1))
        }
    }
}

pub fn which_way_gate(phi: &Angle, n_bits: u32) -> Result<u64> {
    let t = rational_turns(phi).ok_or_else(|| Error::NotOnInvariantSet(format!("{phi}/2π is irrational")))?;
    phase_rotation(n_bits, &t)
}

pub fn interference_gate(phi: &Angle, n_bits: u32) -> Result<u64> {
    theta_count(n_bits, phi)
}

pub fn mz_gates(phi: &Angle, n_bits: u32) -> MzGates {
    MzGates {
        which_way: which_way_gate(phi, n_bits).is_ok(),
        interference: interference_gate(phi, n_bits).is_ok(),
    }
}

fn radians_f64(phi: &Angle) -> f64 {
    match phi {
        Angle::Turns(t) => std::f64::consts::TAU * t.turns().to_f64(),
        Angle::Cosine(c) => c.to_f64().clamp(-1.0, 1.0).acos(),
    }
}

/// `VU|a⟩` and `UVU|a⟩` with `U` the normalized Hadamard and `V = diag(1, e^{iφ})`.
pub fn unitary_probabilities(mode: MzMode, phi: f64) -> [f64; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let u = |v: [Complex64; 2]| [(v[0] + v[1]) * s, (v[0] - v[1]) * s];
    let ph = |v: [Complex64; 2]| [v[0], v[1] * Complex64::from_polar(1.0, phi)];
    let a = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let out = match mode {
        MzMode::WhichWay => ph(u(a)),
        MzMode::Interference => u(ph(u(a))),
    };
    [out[0].norm_sqr(), out[1].norm_sqr()]
}

/// Which-way gives `S_b(π/2, φ)`; interference gives `S_c(φ, 0)`.
pub fn mz_run(cfg: &MzConfig) -> Result<MzReport> {
    let gates = mz_gates(&cfg.phi, cfg.n_bits);
    let (string, names) = match cfg.mode {
        MzMode::WhichWay => {
            which_way_gate(&cfg.phi, cfg.n_bits)?;
            let t = rational_turns(&cfg.phi).expect("gate passed");
            (sample(cfg.n_bits, &Angle::turns(1, 4), &t)?.with_tag('b'), ["D_b", "D_not_b"])
        }
        MzMode::Interference => {
            interference_gate(&cfg.phi, cfg.n_bits)?;
            (sample(cfg.n_bits, &cfg.phi, &ExactAngle::zero())?.with_tag('c'), ["D_c", "D_not_c"])
        }
    };
    let p = string.fraction().to_rational();
    let probs = [p.clone(), Rational::one() - p];
    let unitary = unitary_probabilities(cfg.mode, radians_f64(&cfg.phi));
    let unitary_gap = (0..2).map(|k| (probs[k].to_f64() - unitary[k]).abs()).fold(0.0, f64::max);
    let detectors = names
        .iter()
        .zip(probs)
        .map(|(n, p)| Detector { name: n.to_string(), display: p.to_f64(), probability: p })
        .collect();
    let counterfactual_mode = cfg.mode.other();
    Ok(MzReport {
        config: cfg.clone(),
        detectors,
        count_a: string.count_a(),
        total: string.len(),
        gates,
        counterfactual_mode,
        counterfactual_admissible: gates.passes(counterfactual_mode),
        unitary_gap,
    })
}

/// Both gates checked over the two natural grids at `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusivityGrid {
    pub n_bits: u32,
    /// Phases `j / 2^{N-1}` turns, all passing the which-way gate.
    pub phase_points: u64,
    /// Those that also pass the interference gate.
    pub phase_both: Vec<ExactAngle>,
    /// Cosines `k / 2^{N-1}`, all passing the interference gate.
    pub cos_points: u64,
    /// Those that also pass the which-way gate.
    pub cos_both: Vec<Rational>,
}

pub fn exclusivity_grid(n_bits: u32, exec: Execution) -> Result<ExclusivityGrid> {
    let half = 1u64 << (n_bits - 1);
    let phase_both = par::filter_map_range(exec, 0..half, |j| {
        let phi = Angle::Turns(ExactAngle::from_turns(Rational::new(j, half)));
        debug_assert!(which_way_gate(&phi, n_bits).is_ok());
        interference_gate(&phi, n_bits).ok().map(|_| ExactAngle::from_turns(Rational::new(j, half)))
    });
    let cos_both = par::filter_map_range(exec, 0..2 * half + 1, |k| {
        let c = Rational::new(k as i64 - half as i64, half as i64);
        let phi = Angle::Cosine(c.clone());
        debug_assert!(interference_gate(&phi, n_bits).is_ok());
        which_way_gate(&phi, n_bits).ok().map(|_| c)
    });
    Ok(ExclusivityGrid { n_bits, phase_points: half, phase_both, cos_points: 2 * half + 1, cos_both })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn which_way_is_half() {
        for j in 0..16 {
            let cfg = MzConfig { mode: MzMode::WhichWay, phi: Angle::turns(j, 16), n_bits: 5 };
            let r = mz_run(&cfg).unwrap();
            assert_eq!(r.detectors[0].probability, rat(1, 2));
            assert!(r.unitary_gap < 1e-12);
        }
    }

    #[test]
    fn interference_follows_cos_half_sq() {
        let cfg = MzConfig { mode: MzMode::Interference, phi: Angle::zero(), n_bits: 4 };
        assert_eq!(mz_run(&cfg).unwrap().detectors[0].probability, rat(1, 1));
        let cfg = MzConfig { mode: MzMode::Interference, phi: Angle::from_cos(rat(3, 8)), n_bits: 4 };
        let r = mz_run(&cfg).unwrap();
        assert_eq!(r.detectors[0].probability, rat(11, 16));
        assert!(!r.counterfactual_admissible);
        assert!(r.unitary_gap < 1e-12);
    }

    #[test]
    fn gate_failures() {
        let cfg = MzConfig { mode: MzMode::Interference, phi: Angle::turns(1, 8), n_bits: 8 };
        assert!(matches!(mz_run(&cfg), Err(Error::NotOnInvariantSet(_))));
        let cfg = MzConfig { mode: MzMode::WhichWay, phi: Angle::from_cos(rat(3, 4)), n_bits: 8 };
        assert!(matches!(mz_run(&cfg), Err(Error::NotOnInvariantSet(_))));
    }

    #[test]
    fn grid_exceptions() {
        let g = exclusivity_grid(6, Execution::default()).unwrap();
        let turns: Vec<_> = g.phase_both.iter().map(|t| t.turns().clone()).collect();
        assert_eq!(turns, vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4)]);
        assert_eq!(g.cos_both, vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
    }
}
