//! The full battery of reproducibility checks behind `permgrowth
//! verify-paper`: every constant, sequence and law the constructions rely
//! on, each reported with measured and expected values.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::antichain::{closure_counts_with, verify_antichain, AntichainSet, ClosureOptions};
use crate::numeric::{format_decimal, parse_rational, pow10};
use crate::perm::{all_permutations, contains, direct_sum, enumerate_indecomposables, sum_decompose, Permutation};
use crate::problems::{named_problem, NamedProblem, PROBLEM_NAMES};
use crate::realizer::{agreement_length, choice_rate, choice_sequence, juxtapose_rate, realize_with_tol, RealizationProblem};
use crate::series::{class_counts, f_eval, growth_rate, proximity_bound, seq_to_polynomial, GrowthRate, SeqSpec};

/// Allowed distance between a computed rate and its six-digit printed value.
pub fn printed_value_slack() -> BigRational {
    BigRational::new(5.into(), 100_000.into())
}

#[derive(Debug, Clone)]
pub struct VerifyProfile {
    pub tol: BigRational,
    /// Name of a built-in problem to replace by its corrupted copy.
    pub corrupt: Option<String>,
    pub parallel: bool,
    pub realization_samples: usize,
}

impl Default for VerifyProfile {
    fn default() -> Self {
        VerifyProfile {
            tol: pow10(-9),
            corrupt: None,
            parallel: false,
            realization_samples: 20,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub measured: String,
    pub expected: String,
    pub millis: u128,
}

struct Battery<'a> {
    profile: &'a VerifyProfile,
    /// Every rate computed, with its sequence, for the certification check.
    emitted: Vec<(SeqSpec, GrowthRate)>,
}

impl Battery<'_> {
    fn problem(&self, name: &str) -> NamedProblem {
        let p = named_problem(name).expect("built-in problem");
        match &self.profile.corrupt {
            Some(c) if c == name => p.corrupted(),
            _ => p,
        }
    }

    fn rate(&mut self, seq: &SeqSpec) -> GrowthRate {
        let g = growth_rate(seq, &self.profile.tol).expect("positive tolerance");
        self.emitted.push((seq.clone(), g.clone()));
        g
    }

    fn near_printed(&mut self, seq: &SeqSpec, printed: &str) -> (bool, String) {
        let g = self.rate(seq);
        let target = parse_rational(printed).expect("printed constant");
        (g.near(&target, &printed_value_slack()), format_decimal(&g.midpoint(), 6))
    }
}

/// Runs every check and returns one outcome per check, in order.
pub fn run_battery(profile: &VerifyProfile) -> Vec<CheckOutcome> {
    let mut battery = Battery {
        profile,
        emitted: Vec::new(),
    };
    type Check = fn(&mut Battery) -> (bool, String, String);
    let checks: [(u32, &'static str, Check); 12] = [
        (1, "lambda and its polynomial", check_lambda),
        (2, "interval endpoints", check_endpoints),
        (3, "xi and zeta", check_xi_zeta),
        (4, "constant-sequence law", check_constant_law),
        (5, "sum-indecomposable counts", check_indecomposable_counts),
        (6, "closure sequences", check_closures),
        (7, "antichain verification", check_antichains),
        (8, "greedy realization", check_realization),
        (9, "perfect-set sampler", check_perfect_set),
        (10, "series laws", check_series_laws),
        (11, "juxtaposition chain", check_juxtaposition),
        (12, "permutation order laws", check_perm_laws),
    ];
    checks
        .iter()
        .map(|&(id, name, check)| {
            let start = Instant::now();
            let (passed, measured, expected) = check(&mut battery);
            CheckOutcome {
                id,
                name,
                passed,
                measured,
                expected,
                millis: start.elapsed().as_millis(),
            }
        })
        .collect()
}

fn check_lambda(b: &mut Battery) -> (bool, String, String) {
    let p = b.problem("prop34");
    let (near, shown) = b.near_printed(&p.r, "2.48187");
    let poly = seq_to_polynomial(&p.r).to_string();
    let ok = near && poly == "1,-2,0,-2,-2,-1";
    (ok, format!("{shown}; {poly}"), "2.48187; 1,-2,0,-2,-2,-1".into())
}

fn check_endpoints(b: &mut Battery) -> (bool, String, String) {
    let mut ok = true;
    let mut measured = Vec::new();
    let mut expected = Vec::new();
    for name in ["prop34", "prop35a", "prop35b", "prop35c"] {
        let p = b.problem(name);
        for (seq, printed) in [(&p.r, p.expected_lower), (&p.t, p.expected_upper)] {
            let (near, shown) = b.near_printed(seq, printed);
            ok &= near;
            measured.push(shown);
            expected.push(printed.to_string());
        }
    }
    (ok, measured.join(","), expected.join(","))
}

fn check_xi_zeta(b: &mut Battery) -> (bool, String, String) {
    let p = b.problem("sec4");
    let (xi_ok, xi) = b.near_printed(&p.r, p.expected_lower);
    let (zeta_ok, zeta) = b.near_printed(&p.t, p.expected_upper);
    let polys = (seq_to_polynomial(&p.r).to_string(), seq_to_polynomial(&p.t).to_string());
    let ok = xi_ok && zeta_ok && polys.0 == "1,-2,0,-1,-1,-1" && polys.1 == "1,-1,-2,-1,-2,-3,-1";
    (
        ok,
        format!("{xi},{zeta}; {}; {}", polys.0, polys.1),
        "2.30524,2.32331; 1,-2,0,-1,-1,-1; 1,-1,-2,-1,-2,-3,-1".into(),
    )
}

fn check_constant_law(b: &mut Battery) -> (bool, String, String) {
    let mut ok = true;
    let mut widths_ok = true;
    for c in 1..=6u64 {
        let seq = SeqSpec::new(vec![c], vec![c]).expect("positive");
        let g = b.rate(&seq);
        ok &= g.contains(&BigRational::from_integer((c + 1).into()));
        widths_ok &= g.width() <= b.profile.tol;
    }
    let ok = ok && widths_ok;
    (ok, format!("contains c+1: {ok}"), "contains c+1 for c=1..6".into())
}

fn check_indecomposable_counts(_: &mut Battery) -> (bool, String, String) {
    let counts: Vec<usize> = (1..=7)
        .map(|n| enumerate_indecomposables(n).map(|v| v.len()).unwrap_or(0))
        .collect();
    let expected = [1, 1, 3, 13, 71, 461, 3447];
    (counts == expected, join(&counts), join(&expected))
}

fn check_closures(b: &mut Battery) -> (bool, String, String) {
    let options = ClosureOptions {
        parallel: b.profile.parallel,
        ..Default::default()
    };
    let cases: [(&str, bool, [u64; 12]); 4] = [
        ("A", true, [1, 1, 3, 5, 6, 6, 6, 6, 6, 6, 6, 6]),
        ("A", false, [1, 1, 3, 5, 8, 8, 8, 8, 8, 8, 8, 8]),
        ("A-three", true, [1, 1, 3, 7, 8, 8, 8, 8, 8, 8, 8, 8]),
        ("U12-12-odd", true, [1, 1, 2, 3, 4, 4, 4, 4, 4, 4, 4, 4]),
    ];
    let mut ok = true;
    let mut measured = Vec::new();
    let mut expected = Vec::new();
    for (name, proper, want) in cases {
        let set = AntichainSet::builtin(name).expect("built-in set");
        let got = closure_counts_with(&set, 12, proper, options);
        let shown = match &got {
            Ok(v) => join(v),
            Err(e) => e.to_string(),
        };
        ok &= got.as_deref() == Ok(&want[..]);
        let kind = if proper { "proper" } else { "total" };
        measured.push(format!("{name} {kind}: {shown}"));
        expected.push(format!("{name} {kind}: {}", join(&want)));
    }
    (ok, measured.join("; "), expected.join("; "))
}

fn check_antichains(_: &mut Battery) -> (bool, String, String) {
    let mut results = Vec::new();
    for name in ["A", "A-prime", "A-three"] {
        let members = AntichainSet::builtin(name).expect("built-in set").members_up_to(16);
        results.push(verify_antichain(&members));
    }
    let mut with_pair = AntichainSet::builtin("A").expect("built-in set").members_up_to(16);
    let inner = with_pair[0].delete_index(0).expect("long member");
    let inner = sum_decompose(&inner).into_iter().max_by_key(Permutation::len).expect("nonempty");
    with_pair.push(inner);
    let negative = verify_antichain(&with_pair);
    let ok = results.iter().all(|&r| r) && !negative;
    (
        ok,
        format!("A={},A-prime={},A-three={},control={}", results[0], results[1], results[2], negative),
        "A=true,A-prime=true,A-three=true,control=false".into(),
    )
}

fn check_realization(b: &mut Battery) -> (bool, String, String) {
    let p = b.problem("prop34");
    let samples = b.profile.realization_samples.max(1);
    let lo = parse_rational("2.49").expect("constant");
    let hi = parse_rational("2.69").expect("constant");
    let limit = pow10(-3);
    let mut passed = 0usize;
    for i in 0..samples {
        let frac = BigRational::new((2 * i + 1).into(), (2 * samples).into());
        let gamma = &lo + (&hi - &lo) * frac;
        let ok = RealizationProblem::new(p.r.clone(), p.t.clone(), p.k, p.b, gamma)
            .ok()
            .and_then(|problem| {
                let deep = realize_with_tol(&problem, 40, &b.profile.tol).ok()?;
                let shallow = realize_with_tol(&problem, 20, &b.profile.tol).ok()?;
                let nested = shallow.lower.lo <= &deep.lower.lo + &b.profile.tol
                    && deep.upper.hi <= &shallow.upper.hi + &b.profile.tol;
                Some(
                    deep.brackets_gamma()
                        && deep.width() < limit
                        && deep.greedy_violations(&problem).is_empty()
                        && nested,
                )
            })
            .unwrap_or(false);
        passed += usize::from(ok);
    }
    (passed == samples, format!("{passed}/{samples} certified"), format!("{samples}/{samples} certified"))
}

fn check_perfect_set(b: &mut Battery) -> (bool, String, String) {
    let p = b.problem("sec4");
    let tol = b.profile.tol.clone();
    let slack = pow10(-6);
    let xi = b.rate(&p.r);
    let zeta = b.rate(&p.t);
    let depth = 8;
    let rates: Vec<GrowthRate> = (0..1u32 << depth)
        .map(|mask| choice_rate(&p.r, &p.t, &bits_of(mask, depth), &tol).expect("dominated"))
        .collect();
    let in_range = rates
        .iter()
        .all(|g| g.lo >= &xi.lo - &slack && g.hi <= &zeta.hi + &slack);
    let monotone = (0..1u32 << depth).all(|mask| {
        (0..depth)
            .filter(|&i| mask & (1 << i) == 0)
            .all(|i| rates[(mask | (1 << i)) as usize].hi >= &rates[mask as usize].lo - &tol)
    });
    // Strings of 16 bits sharing their first 12.
    let eps = pow10(-2);
    let c = p.t.bound();
    let m = proximity_bound(&eps, c).expect("positive eps") as usize;
    let mut close = true;
    for (x, y) in [(0x0abcu32, 0x5abcu32), (0xffffu32, 0x0fffu32), (0x1234u32, 0xe234u32)] {
        let (bx, by) = (bits_of(x, 16), bits_of(y, 16));
        let sx = choice_sequence(&p.r, &p.t, &bx).expect("dominated");
        let sy = choice_sequence(&p.r, &p.t, &by).expect("dominated");
        if agreement_length(&sx, &sy, 200) >= m {
            let gx = b.rate(&sx);
            let gy = b.rate(&sy);
            let gap = if gx.midpoint() > gy.midpoint() { &gx.hi - &gy.lo } else { &gy.hi - &gx.lo };
            close &= gap <= &eps + &tol;
        } else {
            close = false;
        }
    }
    let ok = in_range && monotone && close;
    (
        ok,
        format!("in [xi,zeta]: {in_range}; monotone: {monotone}; prefix-close: {close}"),
        "in [xi,zeta]: true; monotone: true; prefix-close: true".into(),
    )
}

fn check_series_laws(b: &mut Battery) -> (bool, String, String) {
    let mut superadditive = true;
    for name in PROBLEM_NAMES {
        let p = b.problem(name);
        for seq in [&p.r, &p.t] {
            superadditive &= class_counts(seq, 30).superadditivity_violation().is_none();
        }
    }
    // f strictly decreasing on a fixed spread of rational pairs.
    let seq = b.problem("prop34").r;
    let mut decreasing = true;
    for i in 0..100i64 {
        let x = BigRational::one() + BigRational::new((i % 17 + 1).into(), (i % 5 + 2).into());
        let y = &x + BigRational::new((i % 7 + 1).into(), (i % 11 + 3).into());
        let fx = f_eval(&seq, &x).expect("x > 1");
        let fy = f_eval(&seq, &y).expect("y > 1");
        decreasing &= fx > fy;
    }
    let certified = b.emitted.iter().all(|(seq, g)| g.certifies(seq));
    let ok = superadditive && decreasing && certified;
    (
        ok,
        format!("superadditive: {superadditive}; decreasing: {decreasing}; certified: {certified} ({} rates)", b.emitted.len()),
        "superadditive: true; decreasing: true; certified: true".into(),
    )
}

fn check_juxtaposition(b: &mut Battery) -> (bool, String, String) {
    let lambda = b.rate(&b.problem("prop34").r);
    let mut chain = lambda.clone();
    let mut ok = true;
    for k in 1..=5i64 {
        chain = juxtapose_rate(&chain, &GrowthRate::exact(1));
        let shift = BigRational::from_integer(k.into());
        ok &= chain.lo == &lambda.lo + &shift && chain.hi == &lambda.hi + &shift;
        ok &= chain.width() <= b.profile.tol;
    }
    (ok, format!("lambda+5 ~ {}", format_decimal(&chain.midpoint(), 6)), "7.48187".into())
}

fn check_perm_laws(_: &mut Battery) -> (bool, String, String) {
    let order = order_axioms_hold(6);
    let round_trip = (1..=8).all(|n| {
        all_permutations(n).all(|p| {
            let parts = sum_decompose(&p);
            let rebuilt = parts[1..].iter().fold(parts[0].clone(), |acc, x| direct_sum(&acc, x));
            rebuilt == p
        })
    });
    let ok = order && round_trip;
    (ok, format!("order axioms: {order}; round trip: {round_trip}"), "order axioms: true; round trip: true".into())
}

/// Reflexivity, antisymmetry and transitivity of containment over every
/// permutation of length at most `max_len`.
pub fn order_axioms_hold(max_len: usize) -> bool {
    let perms: Vec<Permutation> = (1..=max_len).flat_map(all_permutations).collect();
    let n = perms.len();
    let words = n.div_ceil(64);
    // below[j] has bit i set when perms[i] <= perms[j].
    let below: Vec<Vec<u64>> = perms
        .iter()
        .map(|host| {
            let mut bits = vec![0u64; words];
            for (i, pat) in perms.iter().enumerate() {
                if contains(pat, host) {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        })
        .collect();
    let has = |j: usize, i: usize| below[j][i / 64] >> (i % 64) & 1 == 1;
    (0..n).all(|j| {
        has(j, j)
            && (0..n).all(|i| {
                if !has(j, i) {
                    return true;
                }
                let antisymmetric = i == j || !has(i, j);
                let transitive = below[i].iter().zip(&below[j]).all(|(a, b)| a & !b == 0);
                antisymmetric && transitive
            })
    })
}

fn bits_of(mask: u32, len: usize) -> Vec<bool> {
    (0..len).map(|i| mask >> i & 1 == 1).collect()
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
