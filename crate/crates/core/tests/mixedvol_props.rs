mod common;

use common::*;
use latdefect::mixedvol::{mixed_volume, mixed_volume_ilp};
use latdefect::{Family, PointConfiguration};
use num_bigint::BigInt;
use proptest::prelude::*;

fn square_family() -> impl Strategy<Value = Family> {
    (2usize..=3).prop_flat_map(|n| full_dim_family(n, n, 0, 3, 5))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(220))]

    #[test]
    fn both_formulas_agree(f in square_family()) {
        let a = mixed_volume(&f).unwrap();
        let b = mixed_volume_ilp(&f).unwrap();
        prop_assert_eq!(&a.value, &b.value);
        prop_assert!(a.value >= BigInt::from(1));
        prop_assert_eq!(a.resum(), Some(a.value.clone()));
        prop_assert_eq!(b.resum(), Some(b.value.clone()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn symmetric_and_invariant(
        (f, shifts, u, rot) in (2usize..=3).prop_flat_map(|n| (
            full_dim_family(n, n, 0, 3, 5),
            prop::collection::vec(prop::collection::vec(-4i64..=4, n), n),
            unimodular(n),
            0..n,
        ))
    ) {
        let v = mixed_volume(&f).unwrap().value;
        let mut members = f.members().to_vec();
        members.rotate_left(rot);
        let last = members.len() - 1;
        members.swap(0, last);
        prop_assert_eq!(&mixed_volume(&Family::new(members).unwrap()).unwrap().value, &v);

        let shifted: Vec<PointConfiguration> =
            f.members().iter().zip(&shifts).map(|(a, t)| a.translate(t).unwrap()).collect();
        prop_assert_eq!(&mixed_volume(&Family::new(shifted).unwrap()).unwrap().value, &v);

        let mapped: Vec<PointConfiguration> = f.members().iter().map(|a| transform(&u, a)).collect();
        let mapped = Family::new(mapped).unwrap();
        prop_assert_eq!(&mixed_volume(&mapped).unwrap().value, &v);
        prop_assert_eq!(&mixed_volume_ilp(&mapped).unwrap().value, &v);
    }
}

#[test]
fn simplex_anchor() {
    for n in 1..=4 {
        let d = PointConfiguration::standard_simplex(n);
        let f = Family::new(vec![d; n]).unwrap();
        assert_eq!(mixed_volume(&f).unwrap().value, BigInt::from(1));
    }
}
