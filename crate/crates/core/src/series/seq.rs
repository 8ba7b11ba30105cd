use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use super::SeriesError;

/// An eventually periodic sequence `s_1, s_2, ...` of positive integers:
/// an explicit prefix followed by a tail repeated forever.
///
/// Text form is `"p1,...,pm;q1,...,qd"`, e.g. `"1,1,3,5;6"`. The prefix may be
/// empty (`";2"`) but the tail may not.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeqSpec {
    prefix: Vec<u64>,
    tail: Vec<u64>,
}

impl SeqSpec {
    pub fn new(prefix: Vec<u64>, tail: Vec<u64>) -> Result<Self, SeriesError> {
        if tail.is_empty() {
            return Err(SeriesError::EmptyTail);
        }
        if let Some(pos) = prefix.iter().chain(&tail).position(|&v| v == 0) {
            return Err(SeriesError::ZeroEntry(pos + 1));
        }
        Ok(SeqSpec { prefix, tail })
    }

    /// The constant sequence `c, c, c, ...`.
    pub fn constant(c: u64) -> Result<Self, SeriesError> {
        SeqSpec::new(vec![], vec![c])
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> &[u64] {
        &self.tail
    }

    pub fn period(&self) -> usize {
        self.tail.len()
    }

    /// The term `s_n`, 1-based.
    pub fn term(&self, n: usize) -> u64 {
        assert!(n >= 1, "sequences are indexed from 1");
        let m = self.prefix.len();
        if n <= m {
            self.prefix[n - 1]
        } else {
            self.tail[(n - m - 1) % self.tail.len()]
        }
    }

    /// `s_1, ..., s_len`.
    pub fn terms(&self, len: usize) -> Vec<u64> {
        (1..=len).map(|n| self.term(n)).collect()
    }

    /// The entry bound `c = max s_n`.
    pub fn bound(&self) -> u64 {
        self.prefix.iter().chain(&self.tail).copied().max().unwrap_or(1)
    }

    /// The sequence `head_1, ..., head_j, s_{j+1}, s_{j+2}, ...` where `s` is
    /// `self` and `j = head.len()`.
    pub fn with_head(&self, head: &[u64]) -> Result<SeqSpec, SeriesError> {
        let j = head.len();
        let m = self.prefix.len();
        let mut prefix = head.to_vec();
        let tail = if j <= m {
            prefix.extend_from_slice(&self.prefix[j..]);
            self.tail.clone()
        } else {
            let d = self.tail.len();
            let shift = (j - m) % d;
            self.tail[shift..].iter().chain(&self.tail[..shift]).copied().collect()
        };
        SeqSpec::new(prefix, tail)
    }

    /// Length of a window `(prefix, period)` covering both sequences: after
    /// `prefix` terms, both repeat with period `period`.
    pub fn common_window(&self, other: &SeqSpec) -> (usize, usize) {
        let m = self.prefix.len().max(other.prefix.len());
        let d = num_integer::lcm(self.period(), other.period());
        (m, d)
    }

    /// `self ≼ other`: every term of `self` is at most the matching term of
    /// `other`.
    pub fn dominated_by(&self, other: &SeqSpec) -> bool {
        let (m, d) = self.common_window(other);
        (1..=m + d).all(|n| self.term(n) <= other.term(n))
    }

    /// Whether the two sequences are equal term by term.
    pub fn same_terms(&self, other: &SeqSpec) -> bool {
        let (m, d) = self.common_window(other);
        (1..=m + d).all(|n| self.term(n) == other.term(n))
    }
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.prefix.iter().join(","), self.tail.iter().join(","))
    }
}

impl Serialize for SeqSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl FromStr for SeqSpec {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, tail) = s
            .trim()
            .split_once(';')
            .ok_or_else(|| SeriesError::Parse(format!("missing ';' in {s:?}")))?;
        let list = |part: &str| -> Result<Vec<u64>, SeriesError> {
            part.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| SeriesError::Parse(format!("bad token {t:?}")))
                })
                .collect()
        };
        SeqSpec::new(list(head)?, list(tail)?)
    }
}
