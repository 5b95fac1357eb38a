mod common;

use common::*;
use latdefect::{Family, PointConfiguration};
use proptest::prelude::*;

fn proper_family() -> impl Strategy<Value = Family> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(n, members)| family(n, members, -2, 3, 5))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn difference_lattice_ignores_the_basepoint(a in (1usize..=3).prop_flat_map(|n| config(n, -3, 3, 1, 6))) {
        let l = a.difference_lattice().unwrap();
        for b in 0..a.len() {
            prop_assert_eq!(a.difference_lattice_from(b).unwrap(), l.clone());
        }
        prop_assert_eq!(l.rank() as isize, a.dimension());
    }

    #[test]
    fn cayley_sum_dimension(f in proper_family()) {
        let cs = f.cayley_sum().unwrap();
        let sum = f.minkowski_sum().unwrap();
        prop_assert_eq!(cs.config.dimension(), sum.dimension() + f.k() as isize);
        prop_assert_eq!(cs.config.len(), f.members().iter().map(PointConfiguration::len).sum::<usize>());
    }

    #[test]
    fn spanning_matches_the_cayley_sum(f in proper_family()) {
        let cs = Family::new(vec![f.cayley_sum().unwrap().config]).unwrap();
        prop_assert_eq!(f.is_spanning().unwrap(), cs.is_spanning().unwrap());
    }

    #[test]
    fn minkowski_sum_is_commutative_and_associative(
        (a, b, c) in (1usize..=3).prop_flat_map(|n| (config(n, -2, 2, 1, 4), config(n, -2, 2, 1, 4), config(n, -2, 2, 1, 4)))
    ) {
        prop_assert_eq!(a.minkowski_sum(&b).unwrap(), b.minkowski_sum(&a).unwrap());
        prop_assert_eq!(
            a.minkowski_sum(&b).unwrap().minkowski_sum(&c).unwrap(),
            a.minkowski_sum(&b.minkowski_sum(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn isomorphism_is_an_equivalence(
        (a, u1, u2, t1, t2) in (1usize..=3).prop_flat_map(|n| (
            config(n, -2, 2, 1, 5),
            unimodular(n),
            unimodular(n),
            prop::collection::vec(-4i64..=4, n),
            prop::collection::vec(-4i64..=4, n),
        ))
    ) {
        let b = transform(&u1, &a).translate(&t1).unwrap();
        let c = transform(&u2, &b).translate(&t2).unwrap();
        prop_assert!(a.is_isomorphic(&a).unwrap());
        for (x, y) in [(&a, &b), (&b, &a), (&b, &c), (&a, &c), (&c, &a)] {
            let w = x.isomorphism_to(y).unwrap();
            prop_assert!(w.is_some());
            prop_assert_eq!(&w.unwrap().apply_config(x).unwrap(), y);
        }
        if a.dimension() >= 1 {
            let doubled = a.scale(2).unwrap();
            prop_assert!(!a.is_isomorphic(&doubled).unwrap());
        }
    }

    #[test]
    fn faces_are_faces(a in (1usize..=3).prop_flat_map(|n| config(n, -2, 2, 1, 7))) {
        let faces = a.faces().unwrap();
        prop_assert_eq!(&faces[0].points, &a);
        for f in &faces {
            prop_assert!(f.is_face_of(&a));
            prop_assert_eq!(f.points.len() + f.complement.len(), a.len());
        }
        for (i, f) in faces.iter().enumerate() {
            for g in &faces[i + 1..] {
                let meet = f.points.intersection(&g.points);
                if !meet.is_empty() {
                    prop_assert!(faces.iter().any(|h| h.points == meet));
                }
            }
        }
    }
}
