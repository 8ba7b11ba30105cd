use proptest::prelude::*;

use permgrowth::antichain::{oscillation_sigma, u_member, UFamilySpec};
use permgrowth::perm::{
    all_permutations, contains, direct_sum, enumerate_indecomposables, inflate, is_simple, is_sum_indecomposable,
    standardize, sum_decompose, Permutation,
};

fn perm(max_len: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_len).prop_flat_map(|n| {
        Just((1..=n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

/// A pattern of `host` picked by a random subset of positions.
fn pattern_of(host: &Permutation, mask: u64) -> Option<Permutation> {
    let picked: Vec<u32> = host
        .entries()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect();
    (!picked.is_empty()).then(|| standardize(&picked).unwrap())
}

proptest! {
    #[test]
    fn subsequences_are_contained(host in perm(9), mask in any::<u64>()) {
        if let Some(p) = pattern_of(&host, mask) {
            prop_assert!(contains(&p, &host));
        }
    }

    #[test]
    fn containment_is_transitive(host in perm(8), m1 in any::<u64>(), m2 in any::<u64>()) {
        if let Some(mid) = pattern_of(&host, m1) {
            if let Some(low) = pattern_of(&mid, m2) {
                prop_assert!(contains(&low, &mid));
                prop_assert!(contains(&low, &host));
            }
        }
    }

    #[test]
    fn containment_is_antisymmetric(a in perm(6), b in perm(6)) {
        if contains(&a, &b) && contains(&b, &a) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn decomposition_round_trips(p in perm(10)) {
        let parts = sum_decompose(&p);
        prop_assert!(parts.iter().all(is_sum_indecomposable));
        let rebuilt = parts[1..].iter().fold(parts[0].clone(), |acc, x| direct_sum(&acc, x));
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn sum_contains_both_summands(a in perm(5), b in perm(5)) {
        let s = direct_sum(&a, &b);
        prop_assert!(contains(&a, &s) && contains(&b, &s));
        prop_assert!(!is_sum_indecomposable(&s));
    }

    #[test]
    fn inflation_contains_its_parts(sigma in perm(5), parts in proptest::collection::vec(perm(3), 5)) {
        let parts = &parts[..sigma.len()];
        let inflated = inflate(&sigma, parts).unwrap();
        prop_assert_eq!(inflated.len(), parts.iter().map(Permutation::len).sum::<usize>());
        prop_assert!(contains(&sigma, &inflated));
        for part in parts {
            prop_assert!(contains(part, &inflated));
        }
    }

    #[test]
    fn nontrivial_inflation_is_not_simple(sigma in perm(6), part in perm(4), at in any::<prop::sample::Index>()) {
        prop_assume!(part.len() >= 2 && sigma.len() >= 2);
        let slot = at.index(sigma.len());
        let parts: Vec<Permutation> = (0..sigma.len())
            .map(|i| if i == slot { part.clone() } else { Permutation::identity(1) })
            .collect();
        prop_assert!(!is_simple(&inflate(&sigma, &parts).unwrap()));
    }

    #[test]
    fn text_round_trip(p in perm(14)) {
        let back: Permutation = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let compact: Permutation = p.to_compact_string().parse().unwrap();
        prop_assert_eq!(compact, p);
    }
}

#[test]
fn every_permutation_is_a_unique_sum_of_indecomposables() {
    // Count compositions of n into indecomposable blocks and compare with n!.
    let counts: Vec<u64> = (1..=7).map(|n| enumerate_indecomposables(n).unwrap().len() as u64).collect();
    let mut ways = vec![1u64];
    for n in 1..=7 {
        let total = (1..=n).map(|k| counts[k - 1] * ways[n - k]).sum();
        ways.push(total);
        assert_eq!(total, all_permutations(n).count() as u64, "n = {n}");
    }
}

#[test]
fn oscillation_pieces_are_simple() {
    for k in 4..=14 {
        assert!(is_simple(&oscillation_sigma(k).unwrap()), "k = {k}");
    }
}

#[test]
fn family_members_are_indecomposable_with_expected_length() {
    let specs = [("12", "12"), ("12", "21"), ("21", "12"), ("21", "21")];
    for (a, b) in specs {
        let spec = UFamilySpec::new(a.parse().unwrap(), b.parse().unwrap()).unwrap();
        for k in 3..=14 {
            let m = u_member(&spec, k).unwrap();
            assert!(is_sum_indecomposable(&m), "U^{{{a},{b}}} k = {k}");
            assert_eq!(m.len(), spec.member_len(k));
            assert_eq!(m.len(), k + 2);
        }
    }
}
