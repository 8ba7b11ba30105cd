use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::SeqSpec;

/// Coefficients `a_0, ..., a_N` of `1 / (1 - sum s_n x^n)`, with `a_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence(Vec<BigUint>);

impl CountSequence {
    pub fn values(&self) -> &[BigUint] {
        &self.0
    }

    /// `a_n`.
    pub fn get(&self, n: usize) -> &BigUint {
        &self.0[n]
    }

    /// Largest index `N` held.
    pub fn max_index(&self) -> usize {
        self.0.len() - 1
    }

    /// First pair `(m, n)` with `m + n <= N` and `a_{m+n} < a_m a_n`, if any.
    pub fn superadditivity_violation(&self) -> Option<(usize, usize)> {
        let last = self.max_index();
        (1..=last)
            .flat_map(|m| (m..=last - m).map(move |n| (m, n)))
            .find(|&(m, n)| self.0[m + n] < &self.0[m] * &self.0[n])
    }
}

/// Counts of a sum-closed class with `s_n` sum-indecomposables of each length
/// `n`: `a_n = sum_{j=1}^n s_j a_{n-j}`.
pub fn class_counts(seq: &SeqSpec, max_n: usize) -> CountSequence {
    let terms = seq.terms(max_n);
    let mut a: Vec<BigUint> = Vec::with_capacity(max_n + 1);
    a.push(BigUint::one());
    for n in 1..=max_n {
        let next = (1..=n).fold(BigUint::zero(), |acc, j| acc + &a[n - j] * terms[j - 1]);
        a.push(next);
    }
    CountSequence(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(s: &str, n: usize) -> Vec<u64> {
        class_counts(&s.parse().unwrap(), n)
            .values()
            .iter()
            .map(|v| u64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn compositions() {
        assert_eq!(counts("1;1", 5), vec![1, 1, 2, 4, 8, 16]);
    }

    #[test]
    fn constant_sequences() {
        for c in 1..=5u64 {
            let a = counts(&format!(";{c}"), 10);
            for (n, &v) in a.iter().enumerate().skip(1) {
                assert_eq!(v, c * (c + 1).pow(n as u32 - 1));
            }
        }
    }

    #[test]
    fn lambda_sequence_by_hand() {
        assert_eq!(counts("1,1,3,5;6", 5), vec![1, 1, 2, 6, 16, 39]);
    }

    #[test]
    fn zero_length() {
        assert_eq!(counts("1;1", 0), vec![1]);
    }

    #[test]
    fn superadditive() {
        let a = class_counts(&"1,1,3,13,71;11".parse().unwrap(), 30);
        assert_eq!(a.superadditivity_violation(), None);
    }
}
