//! Permutations in one-line notation and the exact combinatorics built on
//! them: pattern containment, direct sums, sum decomposition, inflation and
//! simplicity.
//!
//! Values are 1-based at every public boundary. The empty permutation is not
//! representable.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest length [`enumerate_indecomposables`] accepts by default.
pub const DEFAULT_ENUMERATION_BOUND: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("a permutation must have at least one entry")]
    Empty,
    #[error("value {0} appears more than once")]
    Duplicate(u32),
    #[error("values to standardize must be distinct")]
    RepeatedValue,
    #[error("entries are not a rearrangement of 1..{0}")]
    NotBijection(usize),
    #[error("bad token {0:?} in permutation text")]
    BadToken(String),
    #[error("inflation of a length-{expected} permutation needs {expected} parts, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("length {n} exceeds the enumeration bound {bound}")]
    TooLong { n: usize, bound: usize },
}

/// A permutation of `1..=n`, `n >= 1`, in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Builds a permutation from one-line notation, checking that the entries
    /// are exactly `1..=n`.
    pub fn new(entries: Vec<u32>) -> Result<Self, PermError> {
        let n = entries.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n];
        for &v in &entries {
            let idx = (v as usize).wrapping_sub(1);
            if idx >= n {
                return Err(PermError::NotBijection(n));
            }
            if seen[idx] {
                return Err(PermError::Duplicate(v));
            }
            seen[idx] = true;
        }
        Ok(Permutation(entries))
    }

    /// The identity permutation `12...n`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "empty permutation");
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// The entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    /// 1-based position holding the least value.
    pub fn position_of_min(&self) -> usize {
        self.position_of(1)
    }

    /// 1-based position holding the greatest value.
    pub fn position_of_max(&self) -> usize {
        self.position_of(self.len() as u32)
    }

    /// 1-based position holding `value`.
    pub fn position_of(&self, value: u32) -> usize {
        self.0.iter().position(|&v| v == value).expect("value out of range") + 1
    }

    /// Deletes the entry at 0-based index `idx` and standardizes the rest.
    /// Returns `None` when that would leave the empty permutation.
    pub fn delete_index(&self, idx: usize) -> Option<Permutation> {
        if self.len() == 1 {
            return None;
        }
        let removed = self.0[idx];
        let rest = self
            .0
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Some(Permutation(rest))
    }

    /// Compact digit form when every value is at most 9, otherwise
    /// space-separated.
    pub fn to_compact_string(&self) -> String {
        if self.len() <= 9 {
            self.0.iter().map(|v| v.to_string()).collect()
        } else {
            self.0.iter().join(" ")
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.to_compact_string())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.iter().join(","))
    }
}

/// Accepts `"3 1 4 2"`, `"3,1,4,2"` or, when every value is a single digit,
/// `"3142"`.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let separated = s.contains(|c: char| c == ',' || c.is_whitespace());
        let values: Vec<u32> = if separated {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| PermError::BadToken(t.to_string())))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| PermError::BadToken(c.to_string())))
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values)
    }
}

/// The permutation order-isomorphic to `values`.
pub fn standardize<T: Ord>(values: &[T]) -> Result<Permutation, PermError> {
    if values.is_empty() {
        return Err(PermError::Empty);
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].cmp(&values[b]));
    let mut ranks = vec![0u32; values.len()];
    for (rank, &idx) in order.iter().enumerate() {
        if rank > 0 && values[order[rank - 1]] == values[idx] {
            return Err(PermError::RepeatedValue);
        }
        ranks[idx] = rank as u32 + 1;
    }
    Ok(Permutation(ranks))
}

/// Whether `host` has a subsequence order-isomorphic to `pattern`.
///
/// Backtracking over host positions. Each pattern entry is matched against
/// the host values already matched to its nearest smaller and larger pattern
/// values, which prunes any branch as soon as the relative order breaks.
pub fn contains(pattern: &Permutation, host: &Permutation) -> bool {
    let k = pattern.len();
    let n = host.len();
    if k > n {
        return false;
    }
    // For pattern index j: indices (among 0..j) of the closest smaller and
    // closest larger pattern values.
    let p = &pattern.0;
    let neighbours: Vec<(Option<usize>, Option<usize>)> = (0..k)
        .map(|j| {
            let below = (0..j).filter(|&i| p[i] < p[j]).max_by_key(|&i| p[i]);
            let above = (0..j).filter(|&i| p[i] > p[j]).min_by_key(|&i| p[i]);
            (below, above)
        })
        .collect();
    let mut matched = vec![0u32; k];
    search(&neighbours, &host.0, 0, 0, &mut matched)
}

fn search(
    neighbours: &[(Option<usize>, Option<usize>)],
    host: &[u32],
    j: usize,
    start: usize,
    matched: &mut [u32],
) -> bool {
    let k = neighbours.len();
    if j == k {
        return true;
    }
    let (below, above) = neighbours[j];
    let lo = below.map_or(0, |i| matched[i]);
    let hi = above.map_or(u32::MAX, |i| matched[i]);
    let last = host.len() - (k - j);
    for pos in start..=last {
        let v = host[pos];
        if v > lo && v < hi {
            matched[j] = v;
            if search(neighbours, host, j + 1, pos + 1, matched) {
                return true;
            }
        }
    }
    false
}

/// `pi ⊕ sigma`: `pi` followed by `sigma` shifted above it.
pub fn direct_sum(pi: &Permutation, sigma: &Permutation) -> Permutation {
    let shift = pi.len() as u32;
    let entries = pi
        .0
        .iter()
        .copied()
        .chain(sigma.0.iter().map(|&v| v + shift))
        .collect();
    Permutation(entries)
}

/// Splits `pi` into its sum-indecomposable components, left to right.
///
/// A component ends at every position `j` whose prefix holds exactly the
/// values `1..=j`.
pub fn sum_decompose(pi: &Permutation) -> Vec<Permutation> {
    let mut parts = Vec::new();
    let mut start = 0;
    let mut running_max = 0;
    for (i, &v) in pi.0.iter().enumerate() {
        running_max = running_max.max(v);
        if running_max as usize == i + 1 {
            let offset = start as u32;
            parts.push(Permutation(pi.0[start..=i].iter().map(|&x| x - offset).collect()));
            start = i + 1;
        }
    }
    parts
}

pub fn is_sum_indecomposable(pi: &Permutation) -> bool {
    let mut running_max = 0;
    for (i, &v) in pi.0.iter().enumerate() {
        running_max = running_max.max(v);
        if running_max as usize == i + 1 {
            return i + 1 == pi.len();
        }
    }
    unreachable!("the full prefix always closes")
}

/// `sigma[parts[0], ..., parts[m-1]]`: entry `i` of `sigma` becomes a block of
/// contiguous positions and values ordered like `parts[i]`.
pub fn inflate(sigma: &Permutation, parts: &[Permutation]) -> Result<Permutation, PermError> {
    if parts.len() != sigma.len() {
        return Err(PermError::ArityMismatch {
            expected: sigma.len(),
            got: parts.len(),
        });
    }
    // Base value of each block: total size of the blocks for smaller values.
    let mut base = vec![0u32; sigma.len()];
    let mut acc = 0u32;
    for value in 1..=sigma.len() as u32 {
        let i = sigma.position_of(value) - 1;
        base[i] = acc;
        acc += parts[i].len() as u32;
    }
    let entries = parts
        .iter()
        .zip(&base)
        .flat_map(|(part, &b)| part.0.iter().map(move |&v| v + b))
        .collect();
    Ok(Permutation(entries))
}

/// True iff `pi` has no interval (contiguous positions carrying contiguous
/// values) of length strictly between 1 and `|pi|`.
pub fn is_simple(pi: &Permutation) -> bool {
    let n = pi.len();
    for a in 0..n {
        let mut lo = pi.0[a];
        let mut hi = pi.0[a];
        for b in a + 1..n {
            lo = lo.min(pi.0[b]);
            hi = hi.max(pi.0[b]);
            let width = b - a + 1;
            if width < n && (hi - lo) as usize == b - a {
                return false;
            }
        }
    }
    true
}

/// All sum-indecomposable permutations of length `n`, lexicographic.
pub fn enumerate_indecomposables(n: usize) -> Result<Vec<Permutation>, PermError> {
    enumerate_indecomposables_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_indecomposables_bounded(
    n: usize,
    bound: usize,
) -> Result<Vec<Permutation>, PermError> {
    if n == 0 {
        return Err(PermError::Empty);
    }
    if n > bound {
        return Err(PermError::TooLong { n, bound });
    }
    Ok(all_permutations(n)
        .filter(is_sum_indecomposable)
        .collect())
}

/// Every permutation of length `n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n as u32)
        .permutations(n)
        .map(Permutation)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("3142"), p("3 1 4 2"));
        assert_eq!(p("3,1,4,2"), p(" 3, 1 ,4,2 "));
        let long: Permutation = "4 1 2 6 3 8 5 11 7 9 10".parse().unwrap();
        assert_eq!(long.len(), 11);
        assert_eq!(long.to_string(), "4 1 2 6 3 8 5 11 7 9 10");
        assert_eq!("".parse::<Permutation>(), Err(PermError::Empty));
        assert_eq!("1x2".parse::<Permutation>(), Err(PermError::BadToken("x".into())));
        assert!(matches!("1,1".parse::<Permutation>(), Err(PermError::Duplicate(1))));
        assert!(matches!("1,3".parse::<Permutation>(), Err(PermError::NotBijection(2))));
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[4, 1, 6, 3]).unwrap(), p("3142"));
        assert_eq!(standardize(&[7]).unwrap(), p("1"));
        assert_eq!(standardize(&[4, 1, 6, 3, 5]).unwrap(), p("31524"));
        assert_eq!(standardize(&[2, 5, 2]), Err(PermError::RepeatedValue));
        assert_eq!(standardize::<i32>(&[]), Err(PermError::Empty));
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&p("51342"), &p("391867452")));
        assert!(contains(&p("1"), &p("391867452")));
        assert!(!contains(&p("21"), &p("12")));
        assert!(!contains(&p("123"), &p("12")));
        assert!(contains(&p("2413"), &p("2413")));
        assert!(!contains(&p("2413"), &p("3142")));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum(&p("21"), &p("1")), p("213"));
        assert_eq!(direct_sum(&p("132"), &p("21")), p("13254"));
        assert_eq!(direct_sum(&p("1"), &p("1")), p("12"));
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(sum_decompose(&p("213546")), vec![p("21"), p("1"), p("21"), p("1")]);
        assert_eq!(sum_decompose(&p("1")), vec![p("1")]);
        assert_eq!(sum_decompose(&p("412563")), vec![p("412563")]);
        assert!(is_sum_indecomposable(&p("21")));
        assert!(!is_sum_indecomposable(&p("12")));
        assert!(is_sum_indecomposable(&p("3142")));
    }

    #[test]
    fn inflation_examples() {
        let parts = [p("132"), p("21"), p("1"), p("123")];
        assert_eq!(inflate(&p("3142"), &parts).unwrap(), p("687219345"));
        let (a, b) = (p("231"), p("21"));
        assert_eq!(inflate(&p("12"), &[a.clone(), b.clone()]).unwrap(), direct_sum(&a, &b));
        assert_eq!(inflate(&p("1"), std::slice::from_ref(&a)).unwrap(), a);
        assert_eq!(
            inflate(&p("12"), &[a]),
            Err(PermError::ArityMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn simplicity_examples() {
        assert!(is_simple(&p("3142")));
        assert!(is_simple(&p("2413")));
        assert!(!is_simple(&p("213")));
        assert!(!is_simple(&p("687219345")));
        assert!(is_simple(&p("1")));
        assert!(is_simple(&p("12")));
        assert!(is_simple(&p("21")));
        assert!(!is_simple(&p("123")));
    }

    #[test]
    fn enumeration_small() {
        assert_eq!(enumerate_indecomposables(1).unwrap(), vec![p("1")]);
        assert_eq!(enumerate_indecomposables(2).unwrap(), vec![p("21")]);
        assert_eq!(
            enumerate_indecomposables(3).unwrap(),
            vec![p("231"), p("312"), p("321")]
        );
        assert_eq!(enumerate_indecomposables(4).unwrap().len(), 13);
        assert_eq!(
            enumerate_indecomposables(11),
            Err(PermError::TooLong { n: 11, bound: 10 })
        );
        assert_eq!(enumerate_indecomposables(0), Err(PermError::Empty));
    }

    #[test]
    fn delete_index_standardizes() {
        assert_eq!(p("3142").delete_index(0), Some(p("132")));
        assert_eq!(p("3142").delete_index(2), Some(p("312")));
        assert_eq!(p("1").delete_index(0), None);
    }
}
