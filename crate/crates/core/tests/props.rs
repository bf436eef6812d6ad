//! Property tests: permutation arithmetic laws and exact field axioms for
//! the cyclotomic values.

use num::BigRational;
use proptest::prelude::*;

use corefact::cyclo::Cyc;
use corefact::perm::Perm;

fn perm_strategy(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|images| Perm::from_images(images).expect("shuffled images are a bijection"))
}

fn cyc_strategy() -> impl Strategy<Value = Cyc> {
    let conductors = prop::sample::select(vec![1u64, 2, 3, 4, 5, 6, 8, 12]);
    conductors.prop_flat_map(|e| {
        let phi = corefact::arith::phi(e) as usize;
        (
            prop::collection::vec((-4i64..=4, 1i64..=4), phi),
            Just(e),
        )
            .prop_map(|(coeffs, e)| {
                let mut value = Cyc::zero(e);
                for (i, (num, den)) in coeffs.into_iter().enumerate() {
                    let root = Cyc::root_of_unity(e, i as i64).unwrap();
                    let scale = BigRational::new(num.into(), den.into());
                    value = value.add(&root.scale(&scale));
                }
                value
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(
        a in perm_strategy(7),
        b in perm_strategy(7),
        c in perm_strategy(7),
    ) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn inverse_cancels(a in perm_strategy(7)) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.inverse().compose(&a).is_identity());
    }

    #[test]
    fn render_parse_roundtrip(a in perm_strategy(9)) {
        let text = a.to_string();
        prop_assert_eq!(Perm::parse(&text, 9).unwrap(), a);
    }

    #[test]
    fn conjugation_preserves_order(a in perm_strategy(7), g in perm_strategy(7)) {
        prop_assert_eq!(a.conjugate_by(&g).order(), a.order());
    }

    #[test]
    fn cyc_addition_commutes(a in cyc_strategy(), b in cyc_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn cyc_multiplication_commutes(a in cyc_strategy(), b in cyc_strategy()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn cyc_associativity(a in cyc_strategy(), b in cyc_strategy(), c in cyc_strategy()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn cyc_distributivity(a in cyc_strategy(), b in cyc_strategy(), c in cyc_strategy()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn cyc_subtraction_gives_zero(a in cyc_strategy()) {
        prop_assert!(a.sub(&a).is_zero());
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn cyc_conjugation_is_involutive(a in cyc_strategy()) {
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn conductor_lift_is_identity(a in cyc_strategy(), k in 1u64..=4) {
        let lifted = a.lift_to(a.conductor() * k);
        prop_assert_eq!(&lifted, &a);
        prop_assert!(lifted.sub(&a).is_zero());
        prop_assert_eq!(lifted.as_rational(), a.as_rational());
    }
}
