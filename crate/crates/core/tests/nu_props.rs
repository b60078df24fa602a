use fihom_core::ideal::{good_ideal, nu, NuValue};
use fihom_core::rep::{external_tensor, induce_young};
use fihom_core::{Field, PrimeField, Rationals, SnRep};
use proptest::prelude::*;

fn induced_nu<F: Field>(field: &F, p: usize, d: usize, k: usize, which: usize) -> NuValue {
    let gi = good_ideal(p, field).unwrap();
    let m = match (d, which % 3) {
        (2, 1) => SnRep::sign(field, 2),
        (2, 2) => SnRep::regular(field, 2),
        _ => SnRep::trivial(field, d),
    };
    let r = induce_young(&external_tensor(&m, &SnRep::sign(field, k)).unwrap()).unwrap();
    nu(&r, &gi).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sign_has_nu_n(n in 0usize..=6, p in 2usize..=3) {
        let gi = good_ideal(p, &Rationals).unwrap();
        prop_assert_eq!(nu(&SnRep::sign(&Rationals, n), &gi).unwrap(), NuValue::Finite(n));
    }

    #[test]
    fn trivial_nu_for_p_two(n in 0usize..=6, q in prop::sample::select(vec![3u64, 5, 7])) {
        let f = PrimeField::new(q).unwrap();
        let gi = good_ideal(2, &f).unwrap();
        prop_assert_eq!(nu(&SnRep::trivial(&f, n), &gi).unwrap(), NuValue::Finite(n - n / 2));
    }

    #[test]
    fn induced_sign_twist_has_nu_k(d in 0usize..=2, k in 0usize..=5, p in 2usize..=3, which in 0usize..3) {
        prop_assume!((p - 1) * d <= k && d + k <= 7);
        prop_assert_eq!(induced_nu(&Rationals, p, d, k, which), NuValue::Finite(k));
    }

    #[test]
    fn zero_rep_has_infinite_nu(n in 0usize..=4) {
        let gi = good_ideal(2, &Rationals).unwrap();
        prop_assert_eq!(nu(&SnRep::zero(&Rationals, n), &gi).unwrap(), NuValue::Infinite);
    }
}
