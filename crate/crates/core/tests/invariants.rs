//! Invariants on random permutation groups of small degree.

use drinfeld::double::Double;
use drinfeld::group::{Caps, Group};
use drinfeld::verify::{verify_suite, Depth};
use proptest::prelude::*;

fn permutation(degree: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..degree).collect::<Vec<_>>()).prop_shuffle()
}

fn generators() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (3usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec(permutation(n), 1..=2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_groups_pass_the_quick_suite((n, gens) in generators()) {
        let g = Group::from_permutations(n, &gens, Caps::default()).unwrap();
        // Degree 5 can generate S5; keep runs short.
        prop_assume!(g.order() <= 24);
        let d = Double::new(&g).unwrap();
        let squares: u64 = d.irreps().iter().map(|r| r.dimension * r.dimension).sum();
        prop_assert_eq!(squares, (g.order() * g.order()) as u64);
        let report = verify_suite(&g, "random", Depth::Quick, Caps::default()).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn kernels_are_closed((n, gens) in generators()) {
        let g = Group::from_permutations(n, &gens, Caps::default()).unwrap();
        prop_assume!(g.order() <= 24);
        let d = Double::new(&g).unwrap();
        for i in 0..d.len() {
            prop_assert!(d.is_label_closed(&d.double_kernel(i)).unwrap());
        }
    }
}
