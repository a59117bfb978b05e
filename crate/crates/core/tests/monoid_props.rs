use std::collections::BTreeSet;

use proptest::prelude::*;

use semiflow::monoid::{brute_force_classify, classify, monoid_add, Ambient, GElement, SubsetDesc};

fn element() -> impl Strategy<Value = GElement> {
    prop_oneof![1 => Just(GElement::Infinity), 7 => (0u64..1_000_000).prop_map(GElement::Finite)]
}

fn ambient() -> impl Strategy<Value = Ambient> {
    prop_oneof![Just(Ambient::Naturals), Just(Ambient::Extended)]
}

fn subset_in(ambient: Ambient, max_t: u64, max_p: u64) -> impl Strategy<Value = SubsetDesc> {
    (0..=max_t, 1..=max_p, any::<u64>(), any::<u64>(), any::<bool>(), 0u8..4).prop_map(
        move |(t, p, fmask, rmask, inf, shape)| {
            let finite: BTreeSet<u64> = (0..t).filter(|i| fmask >> (i % 64) & 1 == 1).collect();
            let residues: BTreeSet<u64> = match shape {
                0 => BTreeSet::new(),
                1 => (0..p).collect(),
                _ => (0..p).filter(|r| rmask >> (r % 64) & 1 == 1).collect(),
            };
            SubsetDesc::new(ambient, finite, t, p, residues, inf && ambient == Ambient::Extended).unwrap()
        },
    )
}

fn subset() -> impl Strategy<Value = SubsetDesc> {
    ambient().prop_flat_map(|a| subset_in(a, 12, 6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn monoid_laws(a in element(), b in element(), c in element()) {
        prop_assert_eq!(monoid_add(monoid_add(a, b), c), monoid_add(a, monoid_add(b, c)));
        prop_assert_eq!(monoid_add(a, b), monoid_add(b, a));
        prop_assert_eq!(monoid_add(GElement::ZERO, a), a);
        prop_assert_eq!(monoid_add(GElement::Infinity, a), GElement::Infinity);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn duality_naturals(b in subset_in(Ambient::Naturals, 20, 8)) {
        prop_assert_eq!(classify(&b).syndetic, !classify(&b.complement()).thick);
        prop_assert_eq!(classify(&b).thick, !classify(&b.complement()).syndetic);
    }

    #[test]
    fn duality_extended(b in subset_in(Ambient::Extended, 20, 8)) {
        prop_assert_eq!(classify(&b).syndetic, !classify(&b.complement()).thick);
        prop_assert_eq!(classify(&b).thick, !classify(&b.complement()).syndetic);
    }

    #[test]
    fn complement_is_involutive_and_pointwise(b in subset(), n in 0u64..200) {
        let c = b.complement();
        prop_assert!(c.complement().same_set(&b));
        prop_assert_ne!(b.contains_n(n), c.contains_n(n));
        if b.ambient() == Ambient::Extended {
            prop_assert_ne!(b.contains_infinity(), c.contains_infinity());
        }
    }

    #[test]
    fn text_form_roundtrips(b in subset()) {
        let parsed: SubsetDesc = b.to_string().parse().unwrap();
        prop_assert!(parsed.same_set(&b));
    }

    #[test]
    fn class_implications(b in subset()) {
        let v = classify(&b);
        prop_assert!(!v.thickly_syndetic || (v.thick && v.syndetic));
        prop_assert!(!v.thickly_periodic || v.periodic);
        prop_assert!(!v.periodic || v.syndetic);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn classify_matches_bounded_oracle(b in ambient().prop_flat_map(|a| subset_in(a, 8, 4))) {
        let (t, p) = (b.threshold(), b.period());
        let k_bound = t + 2 * p + 1;
        let t_bound = t + 4 * p + k_bound;
        let exact = classify(&b);
        let oracle = brute_force_classify(&b, k_bound, t_bound);
        prop_assert_eq!(exact.flags(), oracle.flags(), "{}: {} vs {}", b, exact.witness, oracle.witness);
    }
}
