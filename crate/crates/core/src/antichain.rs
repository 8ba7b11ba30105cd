//! Increasing oscillations, the antichain families `U^{α,β}` and the
//! sum-indecomposable closures of sets built from them.
//!
//! `U^{α,β}` has one member for every index `k >= 3`: take `σ_k`, inflate its
//! least entry by `α` and, for even `k`, its greatest entry by `β`, or for odd
//! `k`, its rightmost entry by `β`. Index 3 uses `σ_3 = 312` (the three least
//! values of the oscillating sequence), which is not simple; from `k = 4` on
//! `σ_k` is an increasing oscillation.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::perm::{
    contains, enumerate_indecomposables, inflate, is_sum_indecomposable, standardize,
    sum_decompose, PermError, Permutation,
};

/// Smallest index of an increasing oscillation `σ_k`.
pub const MIN_OSCILLATION_INDEX: usize = 4;
/// Smallest index used when building `U^{α,β}` members.
pub const MIN_FAMILY_INDEX: usize = 3;
/// Default largest length [`closure_counts`] will report.
pub const DEFAULT_CLOSURE_BOUND: usize = 12;
/// Members up to `n + COUNT_HORIZON` are used to count patterns of length
/// `n`.
pub const COUNT_HORIZON: usize = 6;
/// Counts are recomputed with members up to `n + CHECK_HORIZON` and must not
/// change.
pub const CHECK_HORIZON: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AntichainError {
    #[error("index {k} is below the minimum {min}")]
    IndexTooSmall { k: usize, min: usize },
    #[error("inflating by {0} would not give an antichain; α and β need length at least 2")]
    TrivialInflation(Permutation),
    #[error("extra member {0} is sum decomposable")]
    DecomposableExtra(Permutation),
    #[error("unknown antichain set {0:?}")]
    UnknownSet(String),
    #[error("antichain set text: {0}")]
    Parse(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("length {n} exceeds the closure bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("closure counts changed between member horizons {horizon} and {check}")]
    Unstable { horizon: usize, check: usize },
}

/// The first `len` terms of `4, 1, 6, 3, 8, 5, ..., 2j+2, 2j-1, ...`.
pub fn oscillating_sequence(len: usize) -> Vec<u32> {
    (1..)
        .flat_map(|j: u32| [2 * j + 2, 2 * j - 1])
        .take(len)
        .collect()
}

/// `σ_k`: the first `k` terms of the oscillating sequence when `k` is even,
/// its `k` least values in order of appearance when `k` is odd, standardized.
fn oscillation_unchecked(k: usize) -> Permutation {
    let seq = oscillating_sequence(2 * k + 2);
    let picked: Vec<u32> = if k.is_multiple_of(2) {
        seq[..k].to_vec()
    } else {
        let mut sorted = seq.clone();
        sorted.sort_unstable();
        let cutoff = sorted[k - 1];
        seq.into_iter().filter(|&v| v <= cutoff).collect()
    };
    standardize(&picked).expect("oscillating sequence has distinct terms")
}

/// The increasing oscillation `σ_k`, `k >= 4`.
pub fn oscillation_sigma(k: usize) -> Result<Permutation, AntichainError> {
    if k < MIN_OSCILLATION_INDEX {
        return Err(AntichainError::IndexTooSmall {
            k,
            min: MIN_OSCILLATION_INDEX,
        });
    }
    Ok(oscillation_unchecked(k))
}

/// The pair `(α, β)` naming the family `U^{α,β}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UFamilySpec {
    alpha: Permutation,
    beta: Permutation,
}

impl UFamilySpec {
    pub fn new(alpha: Permutation, beta: Permutation) -> Result<Self, AntichainError> {
        for p in [&alpha, &beta] {
            if p.len() < 2 {
                return Err(AntichainError::TrivialInflation(p.clone()));
            }
        }
        Ok(UFamilySpec { alpha, beta })
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    /// Length of the member with index `k`.
    pub fn member_len(&self, k: usize) -> usize {
        k + self.alpha.len() + self.beta.len() - 2
    }
}

impl fmt::Display for UFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U^{{{},{}}}", self.alpha, self.beta)
    }
}

/// The member of `U^{α,β}` built from `σ_k`, `k >= 3`.
pub fn u_member(spec: &UFamilySpec, k: usize) -> Result<Permutation, AntichainError> {
    if k < MIN_FAMILY_INDEX {
        return Err(AntichainError::IndexTooSmall {
            k,
            min: MIN_FAMILY_INDEX,
        });
    }
    let sigma = oscillation_unchecked(k);
    let least = sigma.position_of_min();
    let other = if k.is_multiple_of(2) {
        sigma.position_of_max()
    } else {
        sigma.len()
    };
    let parts: Vec<Permutation> = (1..=sigma.len())
        .map(|i| {
            if i == least {
                spec.alpha.clone()
            } else if i == other {
                spec.beta.clone()
            } else {
                Permutation::identity(1)
            }
        })
        .collect();
    Ok(inflate(&sigma, &parts)?)
}

/// Which indices `k` of a family are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    All,
    EvenK,
    OddK,
}

impl Parity {
    fn keeps(self, k: usize) -> bool {
        match self {
            Parity::All => true,
            Parity::EvenK => k.is_multiple_of(2),
            Parity::OddK => k % 2 == 1,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Parity::All => "all",
            Parity::EvenK => "even",
            Parity::OddK => "odd",
        }
    }
}

/// A union of (parity-filtered) `U` families plus finitely many explicit
/// sum-indecomposable permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntichainSet {
    label: String,
    generators: Vec<(UFamilySpec, Parity)>,
    extras: Vec<Permutation>,
}

/// Names accepted by [`AntichainSet::builtin`].
pub const BUILTIN_SETS: &[&str] = &["A", "A-prime", "A-three", "A1", "A2", "A3", "U12-12-odd"];

impl AntichainSet {
    pub fn new(
        label: impl Into<String>,
        generators: Vec<(UFamilySpec, Parity)>,
        extras: Vec<Permutation>,
    ) -> Result<Self, AntichainError> {
        if let Some(bad) = extras.iter().find(|p| !is_sum_indecomposable(p)) {
            return Err(AntichainError::DecomposableExtra(bad.clone()));
        }
        Ok(AntichainSet {
            label: label.into(),
            generators,
            extras,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[(UFamilySpec, Parity)] {
        &self.generators
    }

    pub fn extras(&self) -> &[Permutation] {
        &self.extras
    }

    /// The named sets:
    ///
    /// * `A`: `U^{12,12} ∪ U^{21,12}`
    /// * `A-prime`: `A` plus the length-4 sum indecomposables contained in
    ///   no member of `A`
    /// * `A-three`: `U^{12,12} ∪ U^{12,21} ∪ U^{21,12}`
    /// * `A1`, `A2`, `A3`: `A-three` plus every sum indecomposable of length
    ///   5, 6, 7 respectively (and so, by containment, of every smaller
    ///   length)
    /// * `U12-12-odd`: the odd-index members of `U^{12,12}`
    pub fn builtin(name: &str) -> Result<Self, AntichainError> {
        let fam = |a: &str, b: &str| -> UFamilySpec {
            UFamilySpec::new(a.parse().unwrap(), b.parse().unwrap()).unwrap()
        };
        let two = || vec![(fam("12", "12"), Parity::All), (fam("21", "12"), Parity::All)];
        let three = || {
            vec![
                (fam("12", "12"), Parity::All),
                (fam("12", "21"), Parity::All),
                (fam("21", "12"), Parity::All),
            ]
        };
        match name {
            "A" => AntichainSet::new(name, two(), vec![]),
            "A-prime" => {
                let base = AntichainSet::new("A", two(), vec![])?;
                let hosts = base.members_up_to(4 + CHECK_HORIZON);
                let extras = enumerate_indecomposables(4)?
                    .into_iter()
                    .filter(|p| !hosts.iter().any(|h| contains(p, h)))
                    .collect();
                AntichainSet::new(name, two(), extras)
            }
            "A-three" => AntichainSet::new(name, three(), vec![]),
            "A1" | "A2" | "A3" => {
                let len = 4 + name[1..].parse::<usize>().unwrap();
                AntichainSet::new(name, three(), enumerate_indecomposables(len)?)
            }
            "U12-12-odd" => AntichainSet::new(name, vec![(fam("12", "12"), Parity::OddK)], vec![]),
            _ => Err(AntichainError::UnknownSet(name.to_string())),
        }
    }

    /// Members of length at most `max_len`, deduplicated, sorted by length
    /// then lexicographically.
    pub fn members_up_to(&self, max_len: usize) -> Vec<Permutation> {
        let mut members: Vec<Permutation> = self
            .generators
            .iter()
            .flat_map(|(spec, parity)| {
                let last = (max_len + 2).saturating_sub(spec.alpha.len() + spec.beta.len());
                (MIN_FAMILY_INDEX..=last)
                    .filter(|&k| parity.keeps(k))
                    .map(|k| u_member(spec, k).expect("index is in range"))
            })
            .chain(self.extras.iter().filter(|p| p.len() <= max_len).cloned())
            .collect();
        members.sort_by(|a, b| (a.len(), a.entries()).cmp(&(b.len(), b.entries())));
        members.dedup();
        members
    }
}

impl fmt::Display for AntichainSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Either a built-in name or `+`-separated items, each `alpha/beta` or
/// `alpha/beta/parity` (parity `all`, `even` or `odd`, on the index `k`) or
/// `@perm` for an explicit extra, e.g. `12/12+21/12/odd+@3142`.
impl FromStr for AntichainSet {
    type Err = AntichainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if BUILTIN_SETS.contains(&s) {
            return AntichainSet::builtin(s);
        }
        if !s.contains(['/', '@']) {
            return Err(AntichainError::UnknownSet(s.to_string()));
        }
        let mut generators = Vec::new();
        let mut extras = Vec::new();
        for item in s.split('+').map(str::trim) {
            if let Some(perm) = item.strip_prefix('@') {
                extras.push(perm.parse()?);
                continue;
            }
            let fields: Vec<&str> = item.split('/').collect();
            let parity = match fields.get(2).copied() {
                None | Some("all") => Parity::All,
                Some("even") => Parity::EvenK,
                Some("odd") => Parity::OddK,
                Some(other) => return Err(AntichainError::Parse(format!("bad parity {other:?}"))),
            };
            if fields.len() < 2 || fields.len() > 3 {
                return Err(AntichainError::Parse(format!("bad item {item:?}")));
            }
            generators.push((UFamilySpec::new(fields[0].parse()?, fields[1].parse()?)?, parity));
        }
        AntichainSet::new(s, generators, extras)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// True iff no member is contained in another. Duplicates count as
/// comparable.
pub fn verify_antichain(members: &[Permutation]) -> bool {
    members.iter().enumerate().all(|(i, x)| {
        members[i + 1..].iter().all(|y| {
            let (short, long) = if x.len() <= y.len() { (x, y) } else { (y, x) };
            !contains(short, long)
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    pub bound: usize,
    pub parallel: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            bound: DEFAULT_CLOSURE_BOUND,
            parallel: false,
        }
    }
}

/// Sum-indecomposable permutations properly contained in some member of
/// `hosts`.
///
/// A sum-indecomposable pattern of a sum-decomposable permutation lies inside
/// one of its components, so it is enough to delete one entry at a time and
/// keep the components of what remains.
pub fn proper_indecomposable_patterns(hosts: &[Permutation]) -> HashSet<Permutation> {
    let mut found: HashSet<Permutation> = HashSet::new();
    let mut expanded: HashSet<Permutation> = hosts.iter().cloned().collect();
    let mut stack: Vec<Permutation> = hosts.to_vec();
    while let Some(p) = stack.pop() {
        for idx in 0..p.len() {
            let Some(rest) = p.delete_index(idx) else { continue };
            for part in sum_decompose(&rest) {
                if found.insert(part.clone()) && expanded.insert(part.clone()) {
                    stack.push(part);
                }
            }
        }
    }
    found
}

fn proper_patterns_parallel(hosts: &[Permutation]) -> HashSet<Permutation> {
    hosts
        .par_iter()
        .map(|h| proper_indecomposable_patterns(std::slice::from_ref(h)))
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Counts, for `n = 1..=n_max`, the sum-indecomposable permutations of length
/// `n` contained in some member of `set`: properly contained when `proper`,
/// otherwise including the members themselves.
pub fn closure_counts(set: &AntichainSet, n_max: usize, proper: bool) -> Result<Vec<u64>, AntichainError> {
    closure_counts_with(set, n_max, proper, ClosureOptions::default())
}

pub fn closure_counts_with(
    set: &AntichainSet,
    n_max: usize,
    proper: bool,
    options: ClosureOptions,
) -> Result<Vec<u64>, AntichainError> {
    if n_max > options.bound {
        return Err(AntichainError::BoundExceeded {
            n: n_max,
            bound: options.bound,
        });
    }
    let horizon = n_max + COUNT_HORIZON;
    let check = n_max + CHECK_HORIZON;
    let counts = closure_counts_at_horizon(set, n_max, proper, horizon, options.parallel);
    if counts != closure_counts_at_horizon(set, n_max, proper, check, options.parallel) {
        return Err(AntichainError::Unstable { horizon, check });
    }
    Ok(counts)
}

/// Closure counts using only members of length at most `horizon`; no
/// stabilization check.
pub fn closure_counts_at_horizon(
    set: &AntichainSet,
    n_max: usize,
    proper: bool,
    horizon: usize,
    parallel: bool,
) -> Vec<u64> {
    let members = set.members_up_to(horizon);
    let mut patterns = if parallel {
        proper_patterns_parallel(&members)
    } else {
        proper_indecomposable_patterns(&members)
    };
    if !proper {
        patterns.extend(members);
    }
    let mut counts = vec![0u64; n_max];
    for p in patterns {
        if p.len() <= n_max {
            counts[p.len() - 1] += 1;
        }
    }
    counts
}
