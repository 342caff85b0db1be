use std::path::Path;

use anyhow::{bail, Context, Result};
use invset::exactmath::{Angle, ExactAngle, Rational, ORACLE_BITS};
use invset::experiments::{ChshConfig, MzConfig, MzMode, PbrConfig};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Read a JSON config, or fall back to `default`.
pub fn load<T: DeserializeOwned>(path: Option<&Path>, default: impl FnOnce() -> T) -> Result<T> {
    let Some(path) = path else { return Ok(default()) };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn chsh_default() -> ChshConfig {
    ChshConfig::optimal(20)
}

pub fn mz_default() -> MzConfig {
    MzConfig { mode: MzMode::Interference, phi: Angle::turns(1, 4), n_bits: 10 }
}

pub fn pbr_default() -> PbrConfig {
    PbrConfig {
        alpha: Angle::zero(),
        beta: Angle::zero(),
        theta: Angle::turns(1, 24),
        n_bits: 10,
        precision_bits: ORACLE_BITS,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleConfig {
    pub n_bits: u32,
    #[serde(default = "Angle::zero")]
    pub theta: Angle,
    #[serde(default = "ExactAngle::zero")]
    pub phi: ExactAngle,
    /// Extra `ζ` steps applied to the constructed string.
    #[serde(default)]
    pub zeta: i64,
    /// Extra powers of `i`.
    #[serde(default)]
    pub iop: i64,
}

pub fn sample_default() -> SampleConfig {
    SampleConfig { n_bits: 4, theta: Angle::zero(), phi: ExactAngle::zero(), zeta: 0, iop: 0 }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiracConfig {
    pub n_bits: u32,
    /// Component phases in turns.
    pub phases: [ExactAngle; 4],
    pub mass: Rational,
    /// Wave vector; all zero for the rest frame.
    #[serde(default = "zero_k")]
    pub k: [Rational; 3],
    /// Steps to trace; `2^{N-1}` (one full period) when absent.
    #[serde(default)]
    pub steps: Option<i64>,
}

fn zero_k() -> [Rational; 3] {
    [Rational::zero(), Rational::zero(), Rational::zero()]
}

pub fn dirac_default() -> DiracConfig {
    DiracConfig {
        n_bits: 5,
        phases: [(0, 1), (1, 8), (1, 2), (3, 4)].map(|(a, b)| ExactAngle::turns_ratio(a, b)),
        mass: Rational::one(),
        k: zero_k(),
        steps: None,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PadicConfig {
    pub p: u64,
    /// Pairs `(a, b)` whose distance `d_p(a, b)` is reported.
    #[serde(default)]
    pub pairs: Vec<[Rational; 2]>,
    /// Digit paths whose level-`k` Cantor interval is reported.
    #[serde(default)]
    pub cantor_paths: Vec<Vec<u64>>,
}

/// `7 = 1+2+2²` against `3 = 1+2`, and `15` against `7`.
pub fn padic_default() -> PadicConfig {
    PadicConfig {
        p: 2,
        pairs: vec![[Rational::from(7), Rational::from(3)], [Rational::from(15), Rational::from(7)]],
        cantor_paths: vec![],
    }
}

/// Apply `--n-bits` to a config's bit depth.
pub fn override_bits(field: &mut u32, n_bits: Option<u32>) {
    if let Some(n) = n_bits {
        *field = n;
    }
}

pub fn reject_bits(n_bits: Option<u32>, command: &str) -> Result<()> {
    if n_bits.is_some() {
        bail!("--n-bits does not apply to `{command}`");
    }
    Ok(())
}
