use fitkit::supernatural::{Exponent, SupernaturalNumber};
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn supernatural() -> impl Strategy<Value = SupernaturalNumber> {
    proptest::collection::vec((0..PRIMES.len(), prop_oneof![4 => (0u32..6).prop_map(Exponent::Finite), 1 => Just(Exponent::Infinite)]), 0..5)
        .prop_map(|factors| {
            factors.into_iter().fold(SupernaturalNumber::one(), |acc, (i, e)| {
                acc.multiply(&SupernaturalNumber::prime_power(PRIMES[i], e).unwrap())
            })
        })
}

fn finite() -> impl Strategy<Value = SupernaturalNumber> {
    (1u128..100_000).prop_map(|n| SupernaturalNumber::from_natural(n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multiplication_is_a_commutative_monoid(a in supernatural(), b in supernatural(), c in supernatural()) {
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        prop_assert_eq!(a.multiply(&b), b.multiply(&a));
        prop_assert_eq!(a.multiply(&SupernaturalNumber::one()), a.clone());
    }

    #[test]
    fn lcm_is_a_semilattice(a in supernatural(), b in supernatural(), c in supernatural()) {
        prop_assert_eq!(a.lcm(&a), a.clone());
        prop_assert_eq!(a.lcm(&b), b.lcm(&a));
        prop_assert_eq!(a.lcm(&b).lcm(&c), a.lcm(&b.lcm(&c)));
        prop_assert!(a.divides(&a.lcm(&b)));
        prop_assert!(a.gcd(&b).divides(&a));
    }

    #[test]
    fn exact_division_undoes_finite_multiplication(a in supernatural(), b in finite()) {
        prop_assert_eq!(a.multiply(&b).divide_exact(&b).unwrap(), a.clone());
    }

    #[test]
    fn finite_values_match_integers(m in 1u128..5000, n in 1u128..5000) {
        let (a, b) = (SupernaturalNumber::from_natural(m).unwrap(), SupernaturalNumber::from_natural(n).unwrap());
        prop_assert_eq!(a.multiply(&b).to_natural(), Some(m * n));
        let g = { let (mut x, mut y) = (m, n); while y != 0 { (x, y) = (y, x % y); } x };
        prop_assert_eq!(a.lcm(&b).to_natural(), Some(m / g * n));
        prop_assert_eq!(a.gcd(&b).to_natural(), Some(g));
    }

    #[test]
    fn text_round_trip(a in supernatural()) {
        prop_assert_eq!(a.to_string().parse::<SupernaturalNumber>().unwrap(), a);
    }
}
