use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use permgrowth::numeric::pow10;
use permgrowth::series::{class_counts, f_eval, growth_rate, proximity_bound, seq_to_polynomial, SeqSpec};

fn spec(max_c: u64) -> impl Strategy<Value = SeqSpec> {
    (
        proptest::collection::vec(1..=max_c, 0..5),
        proptest::collection::vec(1..=max_c, 1..4),
    )
        .prop_map(|(p, t)| SeqSpec::new(p, t).unwrap())
}

fn above_one() -> impl Strategy<Value = BigRational> {
    (1_001i64..20_000).prop_map(|n| BigRational::new(n.into(), 1000.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f_strictly_decreasing(s in spec(8), x in above_one(), dx in 1i64..5_000) {
        let y = &x + BigRational::new(dx.into(), 1000.into());
        prop_assert!(f_eval(&s, &x).unwrap() > f_eval(&s, &y).unwrap());
    }

    #[test]
    fn termwise_dominance_orders_rates(s in spec(6), bumps in proptest::collection::vec(0u64..3, 8)) {
        let prefix: Vec<u64> = s.prefix().iter().zip(&bumps).map(|(a, b)| a + b).collect();
        let tail: Vec<u64> = s.tail().iter().zip(bumps.iter().rev()).map(|(a, b)| a + b).collect();
        let big = SeqSpec::new(prefix, tail).unwrap();
        prop_assert!(s.dominated_by(&big));
        let tol = pow10(-8);
        let (gs, gb) = (growth_rate(&s, &tol).unwrap(), growth_rate(&big, &tol).unwrap());
        prop_assert!(gs.lo <= gb.hi);
    }

    #[test]
    fn polynomial_changes_sign_across_bracket(s in spec(8)) {
        let tol = pow10(-7);
        let g = growth_rate(&s, &tol).unwrap();
        prop_assert!(g.certifies(&s));
        prop_assert!(g.width() <= tol);
        let p = seq_to_polynomial(&s);
        let (a, b) = (p.eval(&g.lo), p.eval(&g.hi));
        prop_assert!(a.signum() * b.signum() <= BigRational::from_integer(0.into()));
    }

    #[test]
    fn counts_are_superadditive_and_below_rate_powers(s in spec(5)) {
        let counts = class_counts(&s, 20);
        prop_assert!(counts.superadditivity_violation().is_none());
        let g = growth_rate(&s, &pow10(-8)).unwrap();
        for n in 1..=20 {
            let an = BigRational::from_integer(BigInt::from(counts.get(n).clone()));
            prop_assert!(an <= num_traits::pow(g.hi.clone(), n));
        }
    }

    #[test]
    fn shared_prefix_keeps_rates_close(
        s in spec(8), t in spec(8), c_pick in 1u64..=8, eps_milli in 1i64..200,
    ) {
        // Pad both to a common bound c and make them agree on the first m terms.
        let c = c_pick.max(s.bound()).max(t.bound());
        let eps = BigRational::new(eps_milli.into(), 1000.into());
        let m = proximity_bound(&eps, c).unwrap() as usize;
        let head = s.terms(m);
        let u = t.with_head(&head).unwrap();
        let tol = pow10(-9);
        let (gs, gu) = (growth_rate(&s, &tol).unwrap(), growth_rate(&u, &tol).unwrap());
        let gap = (gs.midpoint() - gu.midpoint()).abs();
        prop_assert!(gap <= &eps + &tol, "gap {} eps {}", gap, eps);
    }
}

#[test]
fn constant_sequences_have_integer_rates() {
    for c in 1..=9u64 {
        let s = SeqSpec::constant(c).unwrap();
        let x = BigRational::from_integer((c + 1).into());
        assert_eq!(f_eval(&s, &x).unwrap(), BigRational::one());
        assert!(growth_rate(&s, &pow10(-9)).unwrap().contains(&x));
    }
}
