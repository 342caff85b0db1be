//! Invariant suites run by the `check` command: operator algebra, p-adic geometry,
//! multi-qubit tables, Dirac operators and the number-theoretic gates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dirac::{
    build_e, complex_action, conventions_diagnostic, dispersion_check, evolution_matrix,
    predicted_turns, rest_step, skeleton_mul, SpinorSample,
};
use crate::error::{Error, Result};
use crate::exactmath::{
    cos_exact, describe::sine_describable, is_describable, pythagorean_solutions, rat, ExactAngle, HighPrecision,
    Rational,
};
use crate::experiments::{chsh_admissibility, exclusivity_grid};
use crate::multiqubit::{bell_agreement, bell_corr, bell_sample};
use crate::padic::{cantor_interval, cantor_map, padic_dist, padic_norm, PadicInt};
use crate::par::Execution;
use crate::samplespace::{canonical, BitString, Label};
use crate::sweep::{amplitude_law_sweep, three_qubit_quarter_sweep, two_qubit_gate_sweep, two_qubit_sweep};
use crate::Angle;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 2016;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Algebra,
    Padic,
    Multiqubit,
    Dirac,
    Numbertheory,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["algebra", "padic", "multiqubit", "dirac", "numbertheory", "all"];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "algebra" => Suite::Algebra,
            "padic" => Suite::Padic,
            "multiqubit" => Suite::Multiqubit,
            "dirac" => Suite::Dirac,
            "numbertheory" => Suite::Numbertheory,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", ")))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::Algebra, Suite::Padic, Suite::Multiqubit, Suite::Dirac, Suite::Numbertheory, Suite::All]
            .iter()
            .position(|s| s == self)
            .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: Suite,
    pub seed: u64,
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    /// Fixed-width summary table.
    pub fn table(&self) -> String {
        let mut out = format!("{:<14} {:<40} {:>10}  {}\n", "suite", "check", "cases", "result");
        for r in &self.results {
            let verdict = if r.passed { "pass".to_string() } else { format!("FAIL {}", r.detail) };
            out.push_str(&format!("{:<14} {:<40} {:>10}  {}\n", r.suite, r.name, r.cases, verdict));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub seed: u64,
    /// Largest `N` for the operator algebra and Dirac period checks.
    pub max_bits: u32,
    pub exec: Execution,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { seed: DEFAULT_SEED, max_bits: 16, exec: Execution::default() }
    }
}

struct Collector {
    suite: &'static str,
    results: Vec<CheckResult>,
}

impl Collector {
    fn new(suite: &'static str) -> Self {
        Collector { suite, results: Vec::new() }
    }

    /// Record a check; `f` returns the case count or a failure description.
    fn check(&mut self, name: &str, f: impl FnOnce() -> std::result::Result<u64, String>) {
        let (passed, cases, detail) = match f() {
            Ok(n) => (true, n, String::new()),
            Err(d) => (false, 0, d),
        };
        self.results.push(CheckResult { suite: self.suite.into(), name: name.into(), passed, cases, detail });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn random_string(rng: &mut ChaCha8Rng, n_bits: u32) -> BitString {
    let labels: Vec<Label> = (0..1u64 << n_bits).map(|_| Label::from_bit(rng.gen())).collect();
    BitString::from_labels(n_bits, &labels).expect("valid length")
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    // Small primes dominate so that valuations are interesting.
    let part = |rng: &mut ChaCha8Rng| {
        let mut n = BigInt::from(rng.gen_range(1i64..1000));
        for p in [2i64, 3, 5] {
            for _ in 0..rng.gen_range(0..6) {
                n *= p;
            }
        }
        n
    };
    let n = part(rng) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new(n, part(rng))
}

pub fn run_suite(suite: Suite, opts: &CheckOptions) -> CheckReport {
    let results = match suite {
        Suite::Algebra => algebra(opts),
        Suite::Padic => padic(opts),
        Suite::Multiqubit => multiqubit(opts),
        Suite::Dirac => dirac(opts),
        Suite::Numbertheory => numbertheory(opts),
        Suite::All => [algebra(opts), padic(opts), multiqubit(opts), dirac(opts), numbertheory(opts)].concat(),
    };
    CheckReport { suite, seed: opts.seed, results }
}

fn algebra(opts: &CheckOptions) -> Vec<CheckResult> {
    let mut c = Collector::new("algebra");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let range = 3..=opts.max_bits;
    c.check("zeta period 2^(N-1)", || {
        for n in range.clone() {
            let s = canonical(n).map_err(err)?;
            let r = random_string(&mut rng, n);
            let period = 1i64 << (n - 1);
            ensure(s.zeta(period) == s && r.zeta(period) == r, || format!("N = {n}"))?;
            ensure(r.zeta(period / 2) != r || r.zeta(1) == r, || format!("N = {n}: period too short"))?;
        }
        Ok(range.clone().count() as u64)
    });
    c.check("i^4 = id, i^2 = negation", || {
        for n in range.clone() {
            for s in [canonical(n).map_err(err)?, random_string(&mut rng, n)] {
                ensure(s.iop(4) == s, || format!("N = {n}: i^4"))?;
                ensure(s.iop(2) == s.negate(), || format!("N = {n}: i^2"))?;
            }
        }
        Ok(range.clone().count() as u64)
    });
    c.check("zeta^(2^(N-3)) canonical = i canonical", || {
        for n in range.clone() {
            let s = canonical(n).map_err(err)?;
            ensure(s.zeta(1 << (n - 3)) == s.iop(1), || format!("N = {n}"))?;
        }
        Ok(range.clone().count() as u64)
    });
    c.check("zeta composition", || {
        let mut cases = 0;
        for n in range.clone() {
            let s = random_string(&mut rng, n);
            let (a, b) = (rng.gen_range(-1000i64..1000), rng.gen_range(-1000i64..1000));
            ensure(s.zeta(a).zeta(b) == s.zeta(a + b), || format!("N = {n}: {a} + {b}"))?;
            cases += 1;
        }
        Ok(cases)
    });
    c.check("amplitude law, N <= 10", || {
        let mut cases = 0;
        for n in 3..=opts.max_bits.min(10) {
            let s = amplitude_law_sweep(n, opts.exec).map_err(err)?;
            ensure(s.passed(), || format!("{:?}", s.failures))?;
            cases += s.cases;
        }
        Ok(cases)
    });
    c.results
}

fn padic(opts: &CheckOptions) -> Vec<CheckResult> {
    let mut c = Collector::new("padic");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    c.check("d_2 examples", || {
        let d1 = padic_dist(&rat(7, 1), &rat(3, 1), 2).map_err(err)?;
        let d2 = padic_dist(&rat(15, 1), &rat(7, 1), 2).map_err(err)?;
        ensure(d1 == rat(1, 4) && d2 == rat(1, 8), || format!("{d1}, {d2}"))?;
        Ok(2)
    });
    let triples: Vec<[Rational; 3]> =
        (0..10_000).map(|_| [random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng)]).collect();
    c.check("ultrametric inequality", || {
        for [a, b, x] in &triples {
            for p in [2, 3, 5, 7] {
                let ac = padic_dist(a, x, p).map_err(err)?;
                let ab = padic_dist(a, b, p).map_err(err)?;
                let bc = padic_dist(b, x, p).map_err(err)?;
                ensure(ac <= ab.clone().max(bc), || format!("p = {p}: {a}, {b}, {x}"))?;
            }
        }
        Ok(4 * triples.len() as u64)
    });
    c.check("norm multiplicativity", || {
        for [x, y, _] in &triples {
            for p in [2, 3, 5, 7] {
                let lhs = padic_norm(&(x * y), p).map_err(err)?;
                let rhs = padic_norm(x, p).map_err(err)? * padic_norm(y, p).map_err(err)?;
                ensure(lhs == rhs, || format!("p = {p}: {x}, {y}"))?;
            }
        }
        Ok(4 * triples.len() as u64)
    });
    c.check("prefix law: digits, distance, intervals", || {
        let mut cases = 0;
        for p in [2u64, 3, 5] {
            for l in 0..=12usize {
                let k = 16;
                let digits: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
                let mut other = digits.clone();
                other[l] = (digits[l] + rng.gen_range(1..p)) % p;
                for j in l + 1..k {
                    other[j] = rng.gen_range(0..p);
                }
                let (x, y) = (PadicInt::new(p, digits.clone()).map_err(err)?, PadicInt::new(p, other.clone()).map_err(err)?);
                let d = x.dist(&y).map_err(err)?;
                let want = Rational::new(1, BigInt::from(p).pow(l as u32));
                ensure(x.shared_prefix(&y) == l && d == want, || format!("p = {p}, l = {l}: d = {d}"))?;
                let (fx, fy) = (cantor_map(&x), cantor_map(&y));
                let shared = cantor_interval(p, &digits[..l]);
                ensure(shared.contains(&fx) && shared.contains(&fy), || format!("p = {p}, l = {l}: level l"))?;
                let next = cantor_interval(p, &digits[..l + 1]);
                ensure(next.contains(&fx) && !next.contains(&fy), || format!("p = {p}, l = {l}: level l + 1"))?;
                ensure(cantor_interval(p, &digits).contains(&fx), || format!("p = {p}: full precision interval"))?;
                cases += 1;
            }
        }
        Ok(cases)
    });
    c.results
}

fn multiqubit(opts: &CheckOptions) -> Vec<CheckResult> {
    let mut c = Collector::new("multiqubit");
    c.check("two-qubit gamma table, N <= 8", || {
        let mut cases = 0;
        for n in 3..=8 {
            let s = two_qubit_sweep(n, opts.exec).map_err(err)?;
            ensure(s.passed(), || format!("{:?}", s.failures))?;
            cases += s.cases;
        }
        Ok(cases)
    });
    c.check("two-qubit gate decides construction, N <= 5", || {
        let mut cases = 0;
        for n in 3..=5 {
            let s = two_qubit_gate_sweep(n, opts.exec).map_err(err)?;
            ensure(s.passed(), || format!("{:?}", s.failures))?;
            cases += s.cases;
        }
        Ok(cases)
    });
    c.check("bell agreement and correlation", || {
        let mut cases = 0;
        for n in 3..=10u32 {
            let half = 1i64 << (n - 1);
            for k in -half..=half {
                let cos = Rational::new(k, half);
                let ms = bell_sample(&Angle::from_cos(cos.clone()), n).map_err(err)?;
                let agree = (Rational::one() + &cos) / Rational::from(2);
                ensure(bell_agreement(&ms).map_err(err)? == agree, || format!("N = {n}, cos = {cos}"))?;
                ensure(bell_corr(&ms).map_err(err)? == cos, || format!("N = {n}, cos = {cos}"))?;
                cases += 1;
            }
        }
        Ok(cases)
    });
    c.check("three qubits on the quarter grid, N <= 6", || {
        let mut cases = 0;
        for n in 3..=6 {
            let s = three_qubit_quarter_sweep(n, opts.exec).map_err(err)?;
            ensure(s.passed(), || format!("{:?}", s.failures))?;
            cases += s.cases;
        }
        Ok(cases)
    });
    c.results
}

fn dirac(opts: &CheckOptions) -> Vec<CheckResult> {
    let mut c = Collector::new("dirac");
    c.check("skeletons are the gamma matrices", || {
        let d = conventions_diagnostic();
        ensure(d.is_empty(), || format!("mismatches at {d:?}"))?;
        Ok(4)
    });
    c.check("anticommutation of skeletons", || {
        let g: Vec<_> = (0..4).map(|mu| build_e(mu, 1).skeleton().expect("signed")).collect();
        let eta = [1, -1, -1, -1];
        for mu in 0..4 {
            for nu in 0..4 {
                let ab = skeleton_mul(&g[mu], &g[nu]);
                let ba = skeleton_mul(&g[nu], &g[mu]);
                for r in 0..4 {
                    for col in 0..4 {
                        let want = if mu == nu && r == col { 2 * eta[mu] } else { 0 };
                        let got = ab[r][col] + ba[r][col];
                        ensure(got.re == want && got.im == 0, || format!("({mu}, {nu}) at ({r}, {col})"))?;
                    }
                }
            }
        }
        Ok(16)
    });
    let phases = [(0, 1), (1, 8), (1, 2), (5, 8)].map(|(a, b)| ExactAngle::turns_ratio(a, b));
    c.check("rest period 2^(N-1)", || {
        for n in 4..=opts.max_bits {
            let psi = SpinorSample::at_rest(n, &phases, rat(1, 1)).map_err(err)?;
            let p = 1i64 << (n - 1);
            ensure(rest_step(&psi, p).components == psi.components, || format!("N = {n}"))?;
            ensure(rest_step(&psi, p / 2).components != psi.components, || format!("N = {n}: half period"))?;
        }
        Ok((4..=opts.max_bits).count() as u64)
    });
    c.check("helicity opposition", || {
        let n = 6;
        let psi = SpinorSample::at_rest(n, &phases, rat(1, 1)).map_err(err)?;
        let t0 = psi.shadow_turns().map_err(err)?;
        for step in 0..(1i64 << (n - 1)) {
            let t = rest_step(&psi, step).shadow_turns().map_err(err)?;
            let d = |r: usize| ExactAngle::from_turns(t[r].to_rational() - t0[r].to_rational());
            let fwd = ExactAngle::turns_ratio(step, 1 << (n - 1));
            ensure(d(0) == fwd && d(1) == fwd && d(2) == -&fwd && d(3) == -&fwd, || format!("step {step}"))?;
        }
        Ok(1 << (n - 1))
    });
    c.check("dispersion", || {
        let z = rat(0, 1);
        let rest = dispersion_check(&rat(1, 1), &[z.clone(), z.clone(), z.clone()]);
        let moving = dispersion_check(&rat(3, 1), &[rat(4, 1), z.clone(), z.clone()]);
        let irr = dispersion_check(&rat(1, 1), &[rat(1, 1), z.clone(), z]);
        ensure(rest.omega == Some(rat(1, 1)), || format!("{rest:?}"))?;
        ensure(moving.omega == Some(rat(5, 1)), || format!("{moving:?}"))?;
        ensure(irr.omega.is_none() && irr.omega_sq == rat(2, 1), || format!("{irr:?}"))?;
        Ok(3)
    });
    c.check("shadow action equals complex action", || {
        let n = 7;
        let k = [rat(1, 1), rat(2, 1), rat(2, 1)];
        let base = SpinorSample::at_rest(n, &phases, rat(1, 1)).map_err(err)?;
        let psi = SpinorSample::new(base.components, rat(0, 1), rat(3, 1), k.clone()).map_err(err)?;
        let t0 = psi.shadow_turns().map_err(err)?;
        let mut cases = 0;
        for steps in [[0, 0, 0, 0], [1, 0, 0, 0], [3, 5, -2, 9], [64, 1, 1, 1], [-7, 2, 30, -11]] {
            let m = evolution_matrix(&k, steps[0], [steps[1], steps[2], steps[3]]);
            let out = crate::dirac::apply(&m, &psi);
            let got = out.shadow_turns().map_err(err)?;
            let want = predicted_turns(&m, &t0, n);
            let z: [Complex64; 4] =
                std::array::from_fn(|r| Complex64::from_polar(1.0, std::f64::consts::TAU * t0[r].to_f64()));
            let w = complex_action(&m, &z, n);
            for r in 0..4 {
                ensure(ExactAngle::from_turns(got[r].to_rational()) == want[r], || format!("{steps:?} component {r}"))?;
                let g = Complex64::from_polar(1.0, std::f64::consts::TAU * got[r].to_f64());
                ensure((g - w[r]).norm() < 1e-12, || format!("{steps:?} component {r}: float"))?;
            }
            cases += 1;
        }
        Ok(cases)
    });
    c.check("zero-step spatial product has order four", || {
        let p = build_e(1, 0).mul(&build_e(2, 0)).mul(&build_e(3, 0));
        let i = p.i_skeleton();
        let i2 = skeleton_mul(&i, &i);
        let i4 = skeleton_mul(&i2, &i2);
        let id = crate::dirac::FormalOperatorMatrix::identity().i_skeleton();
        ensure(i4 == id && i2 != id, || format!("{p}"))?;
        ensure(p.is_generalized_permutation(), || "not a permutation".into())?;
        Ok(1)
    });
    c.results
}

/// `2cos(2π·turns)` is an algebraic integer; when rational it is an integer in `[-2, 2]`.
/// Returns the rational value if the numeric value is within `2^{-150}` of such an integer.
pub fn niven_oracle(turns: &Rational, hp: &mut HighPrecision) -> Option<Rational> {
    let x = hp.turns_to_radians(turns);
    let c = hp.cos(&x);
    let two_c = hp.mul(&c, &hp.small(2));
    let j = hp.round_to_int(&two_c);
    let jf = hp.int(&j);
    let tol = hp.pow2(-150);
    hp.close(&two_c, &jf, &tol).then(|| Rational::new(j, 2))
}

fn numbertheory(opts: &CheckOptions) -> Vec<CheckResult> {
    let mut c = Collector::new("numbertheory");
    c.check("Niven grid n <= 100", || {
        let hp = &mut HighPrecision::new(200);
        let mut cases = 0;
        let exceptional = [rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)];
        for n in 1..=100i64 {
            for m in 0..2 * n {
                // cos(mπ/n) = cos(2π · m/2n).
                let t = Rational::new(m, 2 * n);
                let exact = cos_exact(&ExactAngle::from_turns(t.clone())).rational().cloned();
                let oracle = niven_oracle(&t, hp);
                ensure(exact == oracle, || format!("m = {m}, n = {n}: {exact:?} vs {oracle:?}"))?;
                ensure(exact.as_ref().map_or(true, |v| exceptional.contains(v)), || format!("m = {m}, n = {n}"))?;
                cases += 1;
            }
        }
        Ok(cases)
    });
    c.check("no Pythagorean triples with hypotenuse 2^k, k <= 12", || {
        for k in 1..=12 {
            let s = pythagorean_solutions(k).map_err(err)?;
            ensure(s.is_empty(), || format!("k = {k}: {s:?}"))?;
        }
        Ok(12)
    });
    c.check("describable cosines have undescribable sines", || {
        let mut cases = 0;
        for n in 1..=12u32 {
            let den = 1i64 << n;
            for k in 1..den {
                ensure(!sine_describable(&rat(k, den), n), || format!("{k}/{den}"))?;
                cases += 1;
            }
        }
        Ok(cases)
    });
    c.check("CHSH sum verdicts", || {
        let v = chsh_admissibility(&rat(1, 2), &rat(3, 4), 4).map_err(err)?;
        ensure(v.is_excluded(), || format!("{v:?}"))?;
        let v = chsh_admissibility(&rat(1, 1), &rat(3, 4), 4).map_err(err)?;
        ensure(!v.is_excluded(), || format!("{v:?}"))?;
        Ok(2)
    });
    c.check("which-way and interference gates exclusive, N = 10", || {
        let g = exclusivity_grid(10, opts.exec).map_err(err)?;
        let turns: Vec<Rational> = g.phase_both.iter().map(|t| t.turns().clone()).collect();
        ensure(turns == [rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4)], || format!("{turns:?}"))?;
        ensure(g.cos_both == [rat(-1, 1), rat(0, 1), rat(1, 1)], || format!("{:?}", g.cos_both))?;
        ensure(g.cos_both.iter().all(|c| is_describable(c, 10)), || "grid".into())?;
        Ok(g.phase_points + g.cos_points)
    });
    c.results
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("foo".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let opts = CheckOptions { max_bits: 8, ..Default::default() };
        for suite in [Suite::Algebra, Suite::Dirac, Suite::Padic] {
            let r = run_suite(suite, &opts);
            assert!(r.passed(), "{}", r.table());
        }
    }
}
