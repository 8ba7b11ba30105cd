use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use num_rational::BigRational;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use permgrowth::antichain::{closure_counts_with, verify_antichain, AntichainSet, ClosureOptions, DEFAULT_CLOSURE_BOUND};
use permgrowth::numeric::{format_decimal, parse_rational};
use permgrowth::perm::enumerate_indecomposables;
use permgrowth::problems::{named_problem, PROBLEM_NAMES};
use permgrowth::realizer::{choice_rate, interval_endpoints, realize_with_tol, RealizationProblem, RealizeError};
use permgrowth::series::{class_counts, growth_rate, seq_to_polynomial, GrowthRate, SeqSpec};
use permgrowth::verify::{run_battery, VerifyProfile};

use crate::report::{self, Report, Table};
use crate::GlobalOpts;

/// Largest bit depth accepted by `sample-set`.
pub const MAX_SAMPLE_DEPTH: usize = 20;

#[derive(Args, Debug)]
pub struct RealizeArgs {
    /// Target rate, e.g. `13/5` or `2.6`.
    pub gamma: String,
    /// Built-in problem (prop34, prop35a, prop35b, prop35c, sec4).
    #[arg(long, conflicts_with_all = ["r", "t"])]
    pub problem: Option<String>,
    #[arg(long, requires = "t")]
    pub r: Option<String>,
    #[arg(long, requires = "r")]
    pub t: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub b: u64,
    /// First free index; defaults to the first index where r and t differ.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 40)]
    pub depth: usize,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, conflicts_with_all = ["r", "t"])]
    pub problem: Option<String>,
    #[arg(long, requires = "t")]
    pub r: Option<String>,
    #[arg(long, requires = "r")]
    pub t: Option<String>,
    /// Number of choice bits.
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    /// Sample this many distinct bit strings instead of enumerating all.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn tol(g: &GlobalOpts) -> Result<BigRational> {
    let t = parse_rational(&g.tol)?;
    if t <= BigRational::from_integer(0.into()) {
        bail!("--tol must be positive");
    }
    Ok(t)
}

fn seq(text: &str) -> Result<SeqSpec> {
    text.parse().with_context(|| format!("reading sequence {text:?}"))
}

fn problem(name: &str) -> Result<permgrowth::problems::NamedProblem> {
    named_problem(name).ok_or_else(|| anyhow!("unknown problem {name:?}; known: {}", PROBLEM_NAMES.join(", ")))
}

fn pair(problem_name: &Option<String>, r: &Option<String>, t: &Option<String>, fallback: &str) -> Result<(SeqSpec, SeqSpec)> {
    match (r, t) {
        (Some(r), Some(t)) => Ok((seq(r)?, seq(t)?)),
        _ => {
            let p = problem(problem_name.as_deref().unwrap_or(fallback))?;
            Ok((p.r, p.t))
        }
    }
}

pub fn rate(echo: String, g: &GlobalOpts, text: &str) -> Result<Report> {
    let tol = tol(g)?;
    let s = seq(text)?;
    let rate = growth_rate(&s, &tol)?;
    let poly = seq_to_polynomial(&s);
    let mut rep = Report::new(echo);
    rep.input("sequence", s.to_string());
    rep.input("tol", report::rational(&tol));
    rep.output("rate", report::rate(&rate, g.precision));
    rep.output("polynomial", json!({ "coefficients": poly.to_string(), "text": poly.pretty() }));
    rep.output("certified", rate.certifies(&s));
    rep.passed = rate.certifies(&s);
    Ok(rep)
}

pub fn realize(echo: String, g: &GlobalOpts, args: &RealizeArgs) -> Result<Report> {
    let tol = tol(g)?;
    let gamma = parse_rational(&args.gamma)?;
    let (r, t, b, k) = match (&args.r, &args.t) {
        (Some(r), Some(t)) => (seq(r)?, seq(t)?, args.b, args.k),
        _ => {
            let p = problem(args.problem.as_deref().unwrap_or("prop34"))?;
            (p.r, p.t, p.b, Some(args.k.unwrap_or(p.k)))
        }
    };
    let prob = match k {
        Some(k) => RealizationProblem::new(r.clone(), t.clone(), k, b, gamma.clone()),
        None => RealizationProblem::inferred(r.clone(), t.clone(), b, gamma.clone()),
    }?;
    if let Err(e @ RealizeError::GammaOutside { .. }) = prob.check_admissible(&tol) {
        let ends = interval_endpoints(&r, &t, b, &tol)?;
        bail!(
            "{e}\ncertified interval: [{}, {}]{}",
            format_decimal(&ends.lower.lo, g.precision),
            format_decimal(&ends.upper.hi, g.precision),
            if ends.capped_at_b { " (capped at b)" } else { "" }
        );
    }
    let cert = realize_with_tol(&prob, args.depth, &tol)?;
    let violations = cert.greedy_violations(&prob);
    let mut rep = Report::new(echo);
    rep.input("gamma", report::rational(&gamma));
    rep.input("r", r.to_string());
    rep.input("t", t.to_string());
    rep.input("b", b);
    rep.input("k", prob.k());
    rep.input("depth", args.depth);
    let chosen: Vec<String> = cert.chosen.iter().map(u64::to_string).collect();
    rep.output("chosen", chosen.join(","));
    rep.output("lower", report::rate(&cert.lower, g.precision));
    rep.output("upper", report::rate(&cert.upper, g.precision));
    rep.output("width", format_decimal(&cert.width(), 2));
    rep.output("brackets_gamma", cert.brackets_gamma());
    rep.output("greedy_violations", violations.clone());
    rep.passed = cert.brackets_gamma() && violations.is_empty();
    Ok(rep)
}

pub fn antichain(echo: String, g: &GlobalOpts, name: &str, max_len: usize) -> Result<Report> {
    let set: AntichainSet = name.parse()?;
    let members = set.members_up_to(max_len);
    let is_antichain = verify_antichain(&members);
    let n_max = max_len.min(DEFAULT_CLOSURE_BOUND);
    let opts = ClosureOptions {
        bound: DEFAULT_CLOSURE_BOUND,
        parallel: g.parallel,
    };
    let proper = closure_counts_with(&set, n_max, true, opts)?;
    let total = closure_counts_with(&set, n_max, false, opts)?;
    let mut rep = Report::new(echo);
    rep.input("set", set.to_string());
    rep.input("max_len", max_len);
    rep.output("members", members.iter().map(|p| p.to_compact_string()).collect::<Vec<_>>());
    rep.output("member_count", members.len());
    rep.output("antichain", is_antichain);
    rep.output("proper_counts", proper);
    rep.output("total_counts", total);
    rep.passed = is_antichain;
    Ok(rep)
}

pub fn verify_paper(echo: String, g: &GlobalOpts, samples: usize, corrupt: Option<String>) -> Result<Report> {
    let profile = VerifyProfile {
        tol: tol(g)?,
        corrupt,
        parallel: g.parallel,
        realization_samples: samples,
    };
    let outcomes = run_battery(&profile);
    let mut table = Table::new(&["id", "check", "result", "measured", "expected"]);
    for o in &outcomes {
        table.rows.push(vec![
            o.id.to_string(),
            o.name.to_string(),
            (if o.passed { "pass" } else { "FAIL" }).to_string(),
            o.measured.clone(),
            o.expected.clone(),
        ]);
        if !o.passed {
            eprintln!("check {} ({}) failed: measured {}, expected {}", o.id, o.name, o.measured, o.expected);
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let mut rep = Report::new(echo);
    rep.input("tol", report::rational(&profile.tol));
    rep.input("samples", samples);
    rep.output("passed", format!("{passed}/{}", outcomes.len()));
    rep.table = Some(table);
    rep.passed = passed == outcomes.len();
    Ok(rep)
}

fn bit_string(mask: u64, depth: usize) -> String {
    (0..depth).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn sample_set(echo: String, g: &GlobalOpts, args: &SampleArgs) -> Result<Report> {
    if args.depth == 0 || args.depth > MAX_SAMPLE_DEPTH {
        bail!("--depth must be between 1 and {MAX_SAMPLE_DEPTH}, got {}", args.depth);
    }
    let tol = tol(g)?;
    let (r, t) = pair(&args.problem, &args.r, &args.t, "sec4")?;
    let total = 1u64 << args.depth;
    let masks: Vec<u64> = match args.count {
        Some(c) if (c as u64) < total => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let mut picked: Vec<u64> = index::sample(&mut rng, total as usize, c).into_iter().map(|i| i as u64).collect();
            picked.sort_unstable();
            picked
        }
        _ => (0..total).collect(),
    };
    let low = growth_rate(&r, &tol)?;
    let high = growth_rate(&t, &tol)?;
    // Identical sequences leave nothing to choose.
    let fixed: Option<GrowthRate> = r.same_terms(&t).then(|| low.clone());
    let mut table = Table::new(&["bits", "lo", "hi"]);
    let mut inside = true;
    for &mask in &masks {
        let bits: Vec<bool> = (0..args.depth).map(|i| mask >> i & 1 == 1).collect();
        let g_rate = match &fixed {
            Some(f) => f.clone(),
            None => choice_rate(&r, &t, &bits, &tol)?,
        };
        inside &= g_rate.lo >= &low.lo - &tol && g_rate.hi <= &high.hi + &tol;
        table.rows.push(vec![
            bit_string(mask, args.depth),
            format_decimal(&g_rate.lo, g.precision),
            format_decimal(&g_rate.hi, g.precision),
        ]);
    }
    let mut rep = Report::new(echo);
    rep.input("r", r.to_string());
    rep.input("t", t.to_string());
    rep.input("depth", args.depth);
    rep.input("count", masks.len());
    rep.input("seed", args.seed);
    rep.output("lower_rate", report::rate(&low, g.precision));
    rep.output("upper_rate", report::rate(&high, g.precision));
    rep.output("all_between", inside);
    rep.table = Some(table);
    rep.passed = inside;
    Ok(rep)
}

pub fn enumerate(echo: String, g: &GlobalOpts, target: &str, max_len: usize, list: bool) -> Result<Report> {
    let _ = g;
    let mut rep = Report::new(echo);
    if let Ok(n) = target.trim().parse::<usize>() {
        rep.input("n", n);
        let mut counts = Vec::new();
        let mut last = Vec::new();
        for len in 1..=n {
            last = enumerate_indecomposables(len)?;
            counts.push(last.len());
        }
        rep.output("indecomposable_counts", counts);
        if list {
            rep.output("indecomposables", last.iter().map(|p| p.to_compact_string()).collect::<Vec<_>>());
        }
        return Ok(rep);
    }
    let s = seq(target)?;
    let counts = class_counts(&s, max_len);
    let superadditive = counts.superadditivity_violation().is_none();
    rep.input("sequence", s.to_string());
    rep.input("max_len", max_len);
    let values: Vec<Value> = counts.values().iter().skip(1).map(|v| Value::String(v.to_string())).collect();
    rep.output("class_counts", values);
    rep.output("superadditive", superadditive);
    rep.passed = superadditive;
    Ok(rep)
}
