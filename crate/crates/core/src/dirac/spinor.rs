use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use super::operator::{build_e, FormalOperatorMatrix};
use crate::error::{Error, Result};
use crate::exactmath::{Dyadic, ExactAngle, Rational};
use crate::samplespace::{hilbert_shadow, phase_string, reconstruct_descriptor, BitString, Construction};

/// Result of `ω² = |k|² + m²` in natural units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dispersion {
    pub omega_sq: Rational,
    /// `ω` when `ω²` is a rational square.
    pub omega: Option<Rational>,
}

impl Dispersion {
    pub fn is_rational(&self) -> bool {
        self.omega.is_some()
    }
}

pub fn dispersion_check(mass: &Rational, k: &[Rational; 3]) -> Dispersion {
    let omega_sq = k.iter().fold(mass * mass, |acc, kj| acc + kj * kj);
    Dispersion { omega: omega_sq.sqrt_exact(), omega_sq }
}

/// Four constructed strings and the kinematics they are meant to describe.
#[derive(Clone, Debug, Serialize)]
pub struct SpinorSample {
    pub n_bits: u32,
    pub components: [BitString; 4],
    pub mass: Rational,
    pub k: [Rational; 3],
    pub omega: Rational,
    /// `ω² = |k|² + m²` holds exactly.
    pub physical: bool,
}

impl SpinorSample {
    /// Components must be constructed phase strings of one `N`.
    pub fn new(components: [BitString; 4], mass: Rational, omega: Rational, k: [Rational; 3]) -> Result<Self> {
        let n_bits = components[0].n_bits();
        for c in &components {
            if c.n_bits() != n_bits {
                return Err(Error::LengthMismatch { expected: components[0].len() as usize, found: c.len() as usize });
            }
            match c.descriptor() {
                Some(d) if d.construction == Construction::Canonical && d.is_phase_string() => {}
                _ => return Err(Error::MissingDescriptor),
            }
        }
        let physical = dispersion_check(&mass, &k).omega_sq == &omega * &omega;
        Ok(SpinorSample { n_bits, components, mass, k, omega, physical })
    }

    /// Components `S(φ_r)` for the given phases, at rest with `ω = m`.
    pub fn at_rest(n_bits: u32, phases: &[ExactAngle; 4], mass: Rational) -> Result<Self> {
        let zero = Rational::zero();
        let components = phase_components(n_bits, phases)?;
        SpinorSample::new(components, mass.clone(), mass, [zero.clone(), zero.clone(), zero])
    }

    /// Components for a moving particle; `ω` must come out rational.
    pub fn moving(n_bits: u32, phases: &[ExactAngle; 4], mass: Rational, k: [Rational; 3]) -> Result<Self> {
        let d = dispersion_check(&mass, &k);
        let omega = d
            .omega
            .ok_or_else(|| Error::Precondition(format!("ω² = {} has no rational root", d.omega_sq)))?;
        SpinorSample::new(phase_components(n_bits, phases)?, mass, omega, k)
    }

    /// `Δt / 2π = 1 / (2^{N-1} ω)`.
    pub fn time_step_turns(&self) -> Option<Rational> {
        (!self.omega.is_zero()).then(|| (Rational::from(1i64 << (self.n_bits - 1)) * &self.omega).recip())
    }

    /// `Δx_j / 2π = 1 / (2^{N-1} k_j)`, defined for nonzero `k_j`.
    pub fn space_step_turns(&self, j: usize) -> Option<Rational> {
        (!self.k[j].is_zero()).then(|| (Rational::from(1i64 << (self.n_bits - 1)) * &self.k[j]).recip())
    }

    /// Phase of each component in turns, from its descriptor.
    pub fn shadow_turns(&self) -> Result<[Dyadic; 4]> {
        let mut out = Vec::with_capacity(4);
        for c in &self.components {
            out.push(hilbert_shadow(c)?.phi_turns.ok_or(Error::MissingDescriptor)?);
        }
        Ok(out.try_into().expect("four components"))
    }

    /// Phase of each component recovered by searching the `ζ`-orbit of the canonical
    /// string for its bits, ignoring the stored descriptors.
    pub fn searched_turns(&self) -> Result<[Dyadic; 4]> {
        let mut out = Vec::with_capacity(4);
        for c in &self.components {
            let d = reconstruct_descriptor(&c.clone().into_raw())?
                .ok_or_else(|| Error::NotOnInvariantSet("component left the ζ-orbit".into()))?;
            out.push(Dyadic::new(d.rotation, self.n_bits - 1));
        }
        Ok(out.try_into().expect("four components"))
    }

    fn with_components(&self, components: [BitString; 4]) -> SpinorSample {
        SpinorSample { components, ..self.clone() }
    }
}

fn phase_components(n_bits: u32, phases: &[ExactAngle; 4]) -> Result<[BitString; 4]> {
    let v = phases.iter().map(|p| phase_string(n_bits, p)).collect::<Result<Vec<_>>>()?;
    Ok(v.try_into().expect("four components"))
}

/// Apply a formal matrix: component `r` becomes `i^k ζ^e` of component `perm[r]`.
pub fn apply(m: &FormalOperatorMatrix, psi: &SpinorSample) -> SpinorSample {
    let components = std::array::from_fn(|r| {
        let e = &m.entries[r];
        psi.components[m.perm[r]].zeta(e.zeta_exponent()).iop(e.ipow as i64)
    });
    psi.with_components(components)
}

/// `diag(ζ^n, ζ^n, ζ^{-n}, ζ^{-n})`.
pub fn rest_step(psi: &SpinorSample, n: i64) -> SpinorSample {
    apply(&build_e(0, n), psi)
}

/// The ordered product `E_0 E_1 E_2 E_3` for given step counts; `E_j` is the identity
/// when `k_j = 0`.
pub fn evolution_matrix(k: &[Rational; 3], n_t: i64, n_space: [i64; 3]) -> FormalOperatorMatrix {
    let mut m = build_e(0, n_t);
    for j in 0..3 {
        if !k[j].is_zero() {
            m = m.mul(&build_e(j + 1, n_space[j]));
        }
    }
    m
}

pub fn full_evolve(psi: &SpinorSample, n_t: i64, n_1: i64, n_2: i64, n_3: i64) -> SpinorSample {
    apply(&evolution_matrix(&psi.k, n_t, [n_1, n_2, n_3]), psi)
}

/// Matrix action on component phases, as exact turn arithmetic under
/// `ζ ↦ e^{2πi/2^{N-1}}`.
pub fn predicted_turns(m: &FormalOperatorMatrix, turns: &[Dyadic; 4], n_bits: u32) -> [ExactAngle; 4] {
    std::array::from_fn(|r| {
        let src = ExactAngle::from_turns(turns[m.perm[r]].to_rational());
        &src + &m.entries[r].turns(n_bits)
    })
}

/// The same action in `f64` complex arithmetic, for display.
pub fn complex_action(m: &FormalOperatorMatrix, psi: &[Complex64; 4], n_bits: u32) -> [Complex64; 4] {
    std::array::from_fn(|r| {
        let t = m.entries[r].turns(n_bits).turns().to_f64();
        Complex64::from_polar(1.0, std::f64::consts::TAU * t) * psi[m.perm[r]]
    })
}

/// One row per component per step: step, component, shadow turns, count of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRow {
    pub step: i64,
    pub component: usize,
    pub shadow_turns: Dyadic,
    pub count_a: u64,
}

/// Rest-frame evolution for steps `0..=steps`.
pub fn rest_trace(psi: &SpinorSample, steps: i64) -> Result<Vec<TraceRow>> {
    let mut rows = Vec::new();
    for step in 0..=steps {
        let s = rest_step(psi, step);
        for (component, (t, c)) in s.shadow_turns()?.into_iter().zip(&s.components).enumerate() {
            rows.push(TraceRow { step, component: component + 1, shadow_turns: t, count_a: c.count_a() });
        }
    }
    Ok(rows)
}

pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from("step,component,shadow_turns,count_a\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.step, r.component, r.shadow_turns, r.count_a);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn psi(n_bits: u32) -> SpinorSample {
        let phases = [(0, 1), (1, 8), (1, 2), (3, 4)].map(|(a, b)| ExactAngle::turns_ratio(a, b));
        SpinorSample::at_rest(n_bits, &phases, rat(1, 1)).unwrap()
    }

    #[test]
    fn dispersion() {
        let z = rat(0, 1);
        let d = dispersion_check(&rat(1, 1), &[z.clone(), z.clone(), z.clone()]);
        assert_eq!(d.omega, Some(rat(1, 1)));
        let d = dispersion_check(&rat(3, 1), &[rat(4, 1), z.clone(), z.clone()]);
        assert_eq!(d.omega, Some(rat(5, 1)));
        let d = dispersion_check(&rat(1, 1), &[rat(1, 1), z.clone(), z]);
        assert_eq!((d.omega_sq, d.omega), (rat(2, 1), None));
    }

    #[test]
    fn rest_period_and_helicity() {
        let p = psi(5);
        assert_eq!(rest_step(&p, 16).components, p.components);
        assert_ne!(rest_step(&p, 8).components, p.components);
        let t0 = p.shadow_turns().unwrap();
        let t1 = rest_step(&p, 3).shadow_turns().unwrap();
        let d = |r: usize| ExactAngle::from_turns(t1[r].to_rational() - t0[r].to_rational());
        assert_eq!(d(0), ExactAngle::turns_ratio(3, 16));
        assert_eq!(d(1), ExactAngle::turns_ratio(3, 16));
        assert_eq!(d(2), ExactAngle::turns_ratio(-3, 16));
        assert_eq!(d(3), ExactAngle::turns_ratio(-3, 16));
    }

    #[test]
    fn additivity() {
        let p = psi(4);
        assert_eq!(rest_step(&rest_step(&p, 3), 5).components, rest_step(&p, 8).components);
    }

    #[test]
    fn moving_frame() {
        let phases = [(0, 1), (1, 4), (1, 2), (3, 4)].map(|(a, b)| ExactAngle::turns_ratio(a, b));
        let p = SpinorSample::moving(5, &phases, rat(3, 1), [rat(4, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert!(p.physical);
        assert_eq!(p.omega, rat(5, 1));
        assert_eq!(p.space_step_turns(1), None);
        assert_eq!(p.time_step_turns(), Some(rat(1, 80)));
        // k_2 = k_3 = 0: only E_0 and E_1 act.
        let e = full_evolve(&p, 2, 1, 7, 7);
        let m = build_e(0, 2).mul(&build_e(1, 1));
        assert_eq!(e.components, apply(&m, &p).components);
        let rest = SpinorSample::at_rest(5, &phases, rat(1, 1)).unwrap();
        assert_eq!(full_evolve(&rest, 3, 9, 9, 9).components, rest_step(&rest, 3).components);
        assert!(SpinorSample::moving(5, &phases, rat(1, 1), [rat(1, 1), rat(0, 1), rat(0, 1)]).is_err());
    }

    #[test]
    fn shadows_follow_matrix() {
        let p = psi(6);
        let k = [rat(1, 1), rat(2, 1), rat(2, 1)];
        let p = SpinorSample::new(p.components.clone(), rat(0, 1), rat(3, 1), k).unwrap();
        let m = evolution_matrix(&p.k, 5, [3, -2, 11]);
        let e = apply(&m, &p);
        let predicted = predicted_turns(&m, &p.shadow_turns().unwrap(), 6);
        let from_descriptor = e.shadow_turns().unwrap();
        let searched = e.searched_turns().unwrap();
        for r in 0..4 {
            assert_eq!(ExactAngle::from_turns(from_descriptor[r].to_rational()), predicted[r]);
            assert_eq!(searched[r], from_descriptor[r]);
        }
    }

    #[test]
    fn trace_layout() {
        let rows = rest_trace(&psi(4), 1).unwrap();
        assert_eq!(rows.len(), 8);
        let csv = trace_csv(&rows);
        assert!(csv.starts_with("step,component,shadow_turns,count_a\n0,1,0/1,8\n"));
    }
}
