use std::fmt::Write as _;

use anyhow::{bail, Result};
use invset::checks::{run_suite, CheckOptions, Suite};
use invset::dirac::{dispersion_check, full_evolve, rest_step, SpinorSample};
use invset::experiments::{chsh_run, mz_run, pbr_run};
use invset::padic::{cantor_interval, ord_p, padic_dist};
use invset::samplespace::{canonical, hilbert_shadow, sample as build_sample};
use serde::Serialize;
use serde_json::{json, Value};

use crate::configs::{self, load, override_bits, reject_bits};
use crate::output::{write_run, Outputs};
use crate::Common;

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_EXCLUDED: u8 = 2;

const DISPLAY_NOTE: &str = "fields named display or *_display are f64 renderings derived from the exact rational fields";

const GOLDEN_SAMPLE: &str = include_str!("../golden/sample_n4.txt");
const GOLDEN_PADIC: &str = include_str!("../golden/padic_d2.csv");

fn ok_report(report: &impl Serialize) -> Value {
    json!({ "status": "ok", "display_note": DISPLAY_NOTE, "report": report })
}

/// Write a successful run, or an exclusion report when the model rejects the setting.
fn finish(c: &Common, command: &str, config: &Value, run: Result<(Outputs, String)>) -> Result<u8> {
    let excluded = |e: &anyhow::Error| e.downcast_ref::<invset::Error>().is_some_and(invset::Error::is_exclusion);
    match run {
        Ok((outputs, summary)) => {
            let hash = write_run(&c.out, command, config, outputs, c.format)?;
            print!("{summary}");
            println!("output hash {hash}");
            Ok(EXIT_OK)
        }
        Err(e) if excluded(&e) => {
            let report = json!({ "status": "excluded", "reason": e.to_string() });
            let outputs = Outputs::new().json(&format!("{command}.json"), &report)?;
            let hash = write_run(&c.out, command, config, outputs, crate::Format::Json)?;
            println!("excluded: {e}");
            println!("output hash {hash}");
            Ok(EXIT_EXCLUDED)
        }
        Err(e) => Err(e),
    }
}

fn no_golden(c: &Common, command: &str) -> Result<()> {
    if c.golden {
        bail!("`{command}` has no golden data; --golden applies to `sample` and `padic`");
    }
    Ok(())
}

pub fn chsh(c: &Common) -> Result<u8> {
    no_golden(c, "chsh")?;
    let mut cfg = load(c.config.as_deref(), configs::chsh_default)?;
    override_bits(&mut cfg.n_bits, c.n_bits);
    let config = serde_json::to_value(&cfg)?;
    let run = (|| {
        let r = chsh_run(&cfg)?;
        let mut summary = String::new();
        for s in &r.sub_ensembles {
            let _ = writeln!(summary, "{}  C = {}  ({:.12})", s.pair, s.correlation, s.correlation_display);
        }
        let _ = writeln!(summary, "S = {:.12} (exact {})", r.s_display, r.s);
        let excluded = r.counterfactuals.iter().flatten().filter(|e| e.excluded).count();
        let _ = writeln!(summary, "counterfactual entries excluded: {excluded}");
        let outputs = Outputs::new()
            .json("chsh.json", &ok_report(&r))?
            .csv("chsh_subensembles.csv", r.sub_ensemble_csv())
            .csv("chsh_counterfactuals.csv", r.counterfactual_csv());
        Ok((outputs, summary))
    })();
    finish(c, "chsh", &config, run)
}

pub fn mz(c: &Common) -> Result<u8> {
    no_golden(c, "mz")?;
    let mut cfg = load(c.config.as_deref(), configs::mz_default)?;
    override_bits(&mut cfg.n_bits, c.n_bits);
    let config = serde_json::to_value(&cfg)?;
    let run = (|| {
        let r = mz_run(&cfg)?;
        let mut csv = String::from("detector,probability,display\n");
        let mut summary = String::new();
        for d in &r.detectors {
            let _ = writeln!(csv, "{},{},{}", d.name, d.probability, d.display);
            let _ = writeln!(summary, "P({}) = {}", d.name, d.probability);
        }
        let _ = writeln!(summary, "counterfactual {:?} admissible: {}", r.counterfactual_mode, r.counterfactual_admissible);
        let outputs = Outputs::new()
            .json("mz.json", &ok_report(&r))?
            .csv("mz.csv", csv);
        Ok((outputs, summary))
    })();
    finish(c, "mz", &config, run)
}

pub fn pbr(c: &Common) -> Result<u8> {
    no_golden(c, "pbr")?;
    let mut cfg = load(c.config.as_deref(), configs::pbr_default)?;
    override_bits(&mut cfg.n_bits, c.n_bits);
    let config = serde_json::to_value(&cfg)?;
    let run = (|| {
        let r = pbr_run(&cfg)?;
        let mut csv = String::from("quantity,exact,value,display,describable\n");
        let _ = writeln!(csv, "X,{},{},{},{}", r.x.exact, r.x.value, r.x.display, r.x_describable);
        let _ = writeln!(csv, "Z,{},{},{},{}", r.z.exact, r.z.value, r.z.display, r.z_describable);
        let summary = format!("X = {:.15}  Z = {:.15}\n", r.x.display, r.z.display);
        let outputs = Outputs::new()
            .json("pbr.json", &ok_report(&r))?
            .csv("pbr.csv", csv);
        Ok((outputs, summary))
    })();
    finish(c, "pbr", &config, run)
}

#[derive(Serialize)]
struct DiracRow {
    step: i64,
    component: usize,
    shadow_turns: String,
    count_a: u64,
}

pub fn dirac(c: &Common) -> Result<u8> {
    no_golden(c, "dirac")?;
    let mut cfg = load(c.config.as_deref(), configs::dirac_default)?;
    override_bits(&mut cfg.n_bits, c.n_bits);
    let config = serde_json::to_value(&cfg)?;
    let rest = cfg.k.iter().all(|k| k.is_zero());
    let run = (|| {
        let psi = if rest {
            SpinorSample::at_rest(cfg.n_bits, &cfg.phases, cfg.mass.clone())?
        } else {
            SpinorSample::moving(cfg.n_bits, &cfg.phases, cfg.mass.clone(), cfg.k.clone())?
        };
        let steps = cfg.steps.unwrap_or(1i64 << (cfg.n_bits - 1));
        let mut rows = Vec::new();
        let mut last = psi.clone();
        for step in 0..=steps {
            // Moving frames advance every axis by the same step count.
            last = if rest { rest_step(&psi, step) } else { full_evolve(&psi, step, step, step, step) };
            for (r, (t, s)) in last.shadow_turns()?.iter().zip(&last.components).enumerate() {
                rows.push(DiracRow { step, component: r + 1, shadow_turns: t.to_string(), count_a: s.count_a() });
            }
        }
        let returns = last.components == psi.components;
        let mut csv = String::from("step,component,shadow_turns,count_a\n");
        for r in &rows {
            let _ = writeln!(csv, "{},{},{},{}", r.step, r.component, r.shadow_turns, r.count_a);
        }
        let report = json!({
            "frame": if rest { "rest" } else { "moving" },
            "dispersion": dispersion_check(&cfg.mass, &cfg.k),
            "omega": psi.omega,
            "time_step_turns": psi.time_step_turns(),
            "steps": steps,
            "returns_to_start": returns,
            "initial": psi,
            "trace": rows,
        });
        let summary = format!("{} frame, {steps} steps, returns to start: {returns}\n", if rest { "rest" } else { "moving" });
        let outputs = Outputs::new()
            .json("dirac.json", &ok_report(&report))?
            .csv("dirac_trace.csv", csv);
        Ok((outputs, summary))
    })();
    finish(c, "dirac", &config, run)
}

fn n4_table() -> invset::Result<String> {
    let s = canonical(4)?;
    Ok([s.clone(), s.zeta(1), s.zeta(2), s.zeta(4)].iter().map(|t| t.to_bits() + "\n").collect())
}

fn compare_golden(c: &Common, command: &str, name: &str, produced: String, golden: &str) -> Result<u8> {
    if c.config.is_some() || c.n_bits.is_some() {
        bail!("--golden uses fixed inputs and takes neither --config nor --n-bits");
    }
    let config = json!({ "golden": name });
    let matched = produced == golden;
    let report = json!({ "golden": name, "matches": matched, "produced": produced });
    let outputs = Outputs::new().json(&format!("{command}_golden.json"), &report)?.csv(name, produced.clone());
    let hash = write_run(&c.out, command, &config, outputs, c.format)?;
    if !matched {
        eprintln!("golden mismatch for {name}\nexpected:\n{golden}produced:\n{produced}");
        return Ok(EXIT_FAIL);
    }
    print!("{produced}");
    println!("golden {name}: match");
    println!("output hash {hash}");
    Ok(EXIT_OK)
}

pub fn sample(c: &Common) -> Result<u8> {
    if c.golden {
        return compare_golden(c, "sample", "sample_n4.txt", n4_table()?, GOLDEN_SAMPLE);
    }
    let mut cfg = load(c.config.as_deref(), configs::sample_default)?;
    override_bits(&mut cfg.n_bits, c.n_bits);
    let config = serde_json::to_value(&cfg)?;
    let run = (|| {
        let s = build_sample(cfg.n_bits, &cfg.theta, &cfg.phi)?.zeta(cfg.zeta).iop(cfg.iop);
        let shadow = hilbert_shadow(&s)?;
        let fraction = s.fraction();
        let report = json!({
            "string": s,
            "count_a": s.count_a(),
            "total": s.len(),
            "fraction": fraction.to_rational(),
            "fraction_display": fraction.to_rational().to_f64(),
            "shadow": {
                "cos_half_sq": shadow.cos_half_sq.to_rational(),
                "phi_turns": shadow.phi_turns.map(|p| p.to_rational()),
            },
        });
        let mut csv = String::from("position,label\n");
        for (i, l) in s.labels().enumerate() {
            let _ = writeln!(csv, "{i},{}", u8::from(l.bit()));
        }
        let summary = format!("{}\nfraction {}\n", s.to_bits(), fraction.to_rational());
        let outputs = Outputs::new()
            .json("sample.json", &ok_report(&report))?
            .csv("sample.csv", csv);
        Ok((outputs, summary))
    })();
    finish(c, "sample", &config, run)
}

fn d2_table() -> Result<String> {
    let mut out = String::from("a,b,d_2\n");
    for [a, b] in configs::padic_default().pairs {
        let _ = writeln!(out, "{a},{b},{}", padic_dist(&a, &b, 2)?);
    }
    Ok(out)
}

pub fn padic(c: &Common) -> Result<u8> {
    reject_bits(c.n_bits, "padic")?;
    if c.golden {
        return compare_golden(c, "padic", "padic_d2.csv", d2_table()?, GOLDEN_PADIC);
    }
    let cfg = load(c.config.as_deref(), configs::padic_default)?;
    let config = serde_json::to_value(&cfg)?;
    let run = (|| {
        let mut csv = String::from("a,b,ord_p,d_p\n");
        let mut rows = Vec::new();
        for [a, b] in &cfg.pairs {
            let ord = ord_p(&(a - b), cfg.p)?;
            let d = padic_dist(a, b, cfg.p)?;
            let _ = writeln!(csv, "{a},{b},{ord},{d}");
            rows.push(json!({ "a": a, "b": b, "ord_p": ord.to_string(), "d_p": d }));
        }
        let intervals: Vec<_> = cfg.cantor_paths.iter().map(|path| cantor_interval(cfg.p, path)).collect();
        let report = json!({ "p": cfg.p, "distances": rows, "cantor_intervals": intervals });
        let outputs = Outputs::new()
            .json("padic.json", &ok_report(&report))?
            .csv("padic.csv", csv.clone());
        Ok((outputs, csv))
    })();
    finish(c, "padic", &config, run)
}

pub fn check(suite: Suite, c: &Common) -> Result<u8> {
    no_golden(c, "check")?;
    if c.config.is_some() {
        bail!("`check` takes no config; use --seed and --n-bits");
    }
    let mut opts = CheckOptions { seed: c.seed, ..CheckOptions::default() };
    override_bits(&mut opts.max_bits, c.n_bits);
    if opts.max_bits < 4 {
        bail!("--n-bits for `check` must be at least 4");
    }
    let report = run_suite(suite, &opts);
    print!("{}", report.table());
    let config = json!({ "suite": suite.to_string(), "seed": opts.seed, "max_bits": opts.max_bits });
    let outputs = Outputs::new().json("check.json", &report)?;
    let hash = write_run(&c.out, "check", &config, outputs, crate::Format::Json)?;
    println!("output hash {hash}");
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}
