mod common;

use common::*;
use latdefect::oracle::{ehrhart_volume, separable_impossibility, witness_search, SparseSystem};
use latdefect::polytope::convex_hull;
use latdefect::Family;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ehrhart_volume_matches_triangulation(
        a in (1usize..=3).prop_flat_map(|n| config(n, -2, 2, 1, n + 3))
    ) {
        let hull = convex_hull(&a).unwrap();
        prop_assert_eq!(ehrhart_volume(hull.v()).unwrap(), hull.normalized_volume().unwrap());
    }
}

/// Members varying in disjoint coordinate blocks of ℤ².
fn separable_family() -> impl Strategy<Value = Family> {
    (prop::collection::vec(0i64..=3, 2..=3), prop::collection::vec(0i64..=3, 2..=3), 0i64..=2, 0i64..=2).prop_map(
        |(xs, ys, y0, x0)| {
            let a0 = xs.iter().map(|&x| vec![x, y0]).collect();
            let a1 = ys.iter().map(|&y| vec![x0, y]).collect();
            Family::from_points(2, vec![a0, a1]).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn separable_supports_have_no_witness(f in separable_family(), seed in any::<u64>()) {
        prop_assert!(separable_impossibility(&f).unwrap());
        let system = SparseSystem::random(f, seed);
        let search = witness_search(&system, 30, seed).unwrap();
        prop_assert!(search.witness.is_none());
    }
}
